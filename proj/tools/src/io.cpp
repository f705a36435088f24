// Copyright 2026 The septrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "septrans/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "septrans/errors.hpp"

namespace septrans::cli {

namespace {

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

std::size_t positive_size(const Json &j, const char *what) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) {
        throw InputError(std::string(what) + " must be a positive integer");
    }
    return j.get<std::size_t>();
}

std::pair<std::size_t, std::size_t> read_dims(const Json &j) {
    const Json &dims = field(j, "dims");
    if (!dims.is_array() || dims.size() != 2) {
        throw InputError("dims must be a two-element array");
    }
    return {positive_size(dims[0], "dims[0]"), positive_size(dims[1], "dims[1]")};
}

}  // namespace

LoadedFile read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    LoadedFile out{path, buf.str(), 0};
    out.hash = fnv1a64(out.bytes);
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

Json parse_json(const LoadedFile &file) {
    try {
        return Json::parse(file.bytes);
    } catch (const Json::parse_error &e) {
        throw InputError(file.path + ": malformed JSON: " + e.what());
    }
}

Json complex_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError("complex numbers must be [re, im] arrays");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(complex_to_json(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json &j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        throw InputError("matrix must have " + std::to_string(rows) + " rows");
    }
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw InputError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
        }
    }
    return m;
}

Json state_to_json(const BipartiteState &psi) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
        amps.push_back(complex_to_json(psi.amplitudes()(i)));
    }
    return Json{{"dims", {psi.dim_a(), psi.dim_b()}}, {"amplitudes", std::move(amps)}};
}

BipartiteState state_from_json(const Json &j) {
    const auto [da, db] = read_dims(j);
    const Json &amps = field(j, "amplitudes");
    if (!amps.is_array() || amps.size() != da * db) {
        throw InputError("amplitudes must have dA*dB = " + std::to_string(da * db) + " entries");
    }
    CVector v(static_cast<Eigen::Index>(da * db));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
    }
    return BipartiteState(da, db, std::move(v));
}

Json operation_to_json(const SeparableOperation &op) {
    Json kraus = Json::array();
    for (const KrausPair &p : op.pairs()) {
        kraus.push_back(Json{{"A", matrix_to_json(p.a)}, {"B", matrix_to_json(p.b)}});
    }
    return Json{{"dims", {op.dim_a(), op.dim_b()}}, {"kraus", std::move(kraus)}};
}

SeparableOperation operation_from_json(const Json &j) {
    const auto [da, db] = read_dims(j);
    const Json &kraus = field(j, "kraus");
    if (!kraus.is_array()) {
        throw InputError("kraus must be an array");
    }
    const auto a = static_cast<Eigen::Index>(da);
    const auto b = static_cast<Eigen::Index>(db);
    std::vector<KrausPair> pairs;
    for (const Json &entry : kraus) {
        pairs.push_back({matrix_from_json(field(entry, "A"), a, a), matrix_from_json(field(entry, "B"), b, b)});
    }
    return SeparableOperation(da, db, std::move(pairs));
}

Json channel_to_json(const RandomUnitaryChannel &ch) {
    Json terms = Json::array();
    for (const UnitaryTerm &t : ch.terms()) {
        terms.push_back(Json{{"p", t.p}, {"U", matrix_to_json(t.u)}, {"V", matrix_to_json(t.v)}});
    }
    return Json{{"dim", ch.dim()}, {"terms", std::move(terms)}};
}

RandomUnitaryChannel channel_from_json(const Json &j) {
    const std::size_t d = positive_size(field(j, "dim"), "dim");
    const Json &terms = field(j, "terms");
    if (!terms.is_array()) {
        throw InputError("terms must be an array");
    }
    const auto n = static_cast<Eigen::Index>(d);
    std::vector<UnitaryTerm> out;
    for (const Json &entry : terms) {
        const Json &p = field(entry, "p");
        if (!p.is_number()) {
            throw InputError("term probability must be a number");
        }
        out.push_back({p.get<double>(), matrix_from_json(field(entry, "U"), n, n),
                       matrix_from_json(field(entry, "V"), n, n)});
    }
    return RandomUnitaryChannel(d, std::move(out));
}

std::string format_real(double x) {
    if (!std::isfinite(x) || std::abs(x) >= 1e6) {
        std::ostringstream s;
        s << x;
        return s.str();
    }
    // Integer arithmetic avoids binary rounding artifacts in the last digit.
    const long long scaled = std::llround(x * 1e12) / 100;
    const long long mag = scaled < 0 ? -scaled : scaled;
    std::string frac = std::to_string(mag % 10000000000LL);
    frac.insert(0, 10 - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') {
        frac.pop_back();
    }
    return std::string(scaled < 0 ? "-" : "") + std::to_string(mag / 10000000000LL) + "." + frac;
}

std::string format_complex(Complex z) {
    const std::string im = format_real(std::abs(z.imag()));
    if (im == "0.0") {
        return format_real(z.real());
    }
    return format_real(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

}  // namespace septrans::cli
