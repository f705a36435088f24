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

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "septrans/numerics.hpp"
#include "septrans/states.hpp"

namespace septrans {

/// Schmidt coefficients (not their squares), descending, unit 2-norm.
class SchmidtSpectrum {
   public:
    explicit SchmidtSpectrum(std::vector<double> values);

    /// From squared coefficients (a probability vector); sorts descending.
    static SchmidtSpectrum from_squares(std::vector<double> squares);
    static SchmidtSpectrum of(const BipartiteState &psi);

    const std::vector<double> &values() const {
        return values_;
    }
    std::size_t size() const {
        return values_.size();
    }
    double operator[](std::size_t j) const {
        return j < values_.size() ? values_[j] : 0.0;
    }
    std::vector<double> squares() const;

    /// Count of entries above cutoff * largest.
    std::size_t rank(double cutoff = kRankCutoff) const;

   private:
    std::vector<double> values_;
};

/// True iff mu^2 majorizes lambda^2: every leading partial sum of mu^2 is at
/// least that of lambda^2, less tol. Shorter spectra are padded with zeros.
bool majorizes(const SchmidtSpectrum &mu, const SchmidtSpectrum &lambda, double tol = kDefaultTol);

struct ProductCondition {
    bool holds = false;
    double lhs = 0.0;  // prod_{j<r} lambda_j, r = rank(lambda)
    double rhs = 0.0;  // prod_{j<r} mu_j
};

ProductCondition product_condition(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu,
                                   double tol = kDefaultTol);

enum class VerdictTag { ImpossibleRank, ImpossibleProduct, EqualSpectra, LoccPossible, OpenRegion };

std::string_view to_string(VerdictTag tag);

struct VerdictDetails {
    std::size_t r_psi = 0;
    std::size_t r_phi = 0;
    double product_psi = 0.0;
    double product_phi = 0.0;
    bool majorization = false;
    /// Products agree (and are positive) while the spectra differ. No
    /// deterministic separable map exists then: equality of the products
    /// would force identical coefficients.
    bool equal_products_unequal_spectra = false;
};

struct TransformVerdict {
    VerdictTag tag;
    VerdictDetails details;

    bool impossible() const {
        return tag == VerdictTag::ImpossibleRank || tag == VerdictTag::ImpossibleProduct;
    }
};

/// Decision ladder for psi (lambda) -> phi (mu) by a deterministic separable map:
/// rank test, product test (with the equality case), majorization, else open.
TransformVerdict transform_verdict(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu,
                                   double tol = kDefaultTol);

/// Checks a spectra pair taken from an actual deterministic certificate. Throws
/// InconsistencyError if the necessary conditions reject a map we hold a
/// certificate for.
TransformVerdict check_certified_pair(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu,
                                      double tol = kDefaultTol);

/// Entrywise equality of spectra within tol.
bool same_spectrum(const SchmidtSpectrum &a, const SchmidtSpectrum &b, double tol = kDefaultTol);

struct ReverseVerdict {
    /// False rules out any deterministic separable map phi -> psi.
    bool reverse_possible_necessary = false;
};

/// Requires the forward verdict not to be Impossible*; throws InputError otherwise.
ReverseVerdict reverse_verdict(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu,
                               double tol = kDefaultTol);

struct Dim2Collapse {
    bool product_holds = false;  // rank condition and product condition
    bool majorization_holds = false;
    bool agree = false;
};

/// For two-coefficient spectra the necessary conditions coincide with majorization.
Dim2Collapse dim2_collapse(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu,
                           double tol = kDefaultTol);

struct MinkowskiCheck {
    double lhs = 0.0;  // det(sum Q)^(1/D)
    double rhs = 0.0;  // sum det(Q_m)^(1/D)
    double gap = 0.0;  // lhs - rhs
    bool proportional = false;
};

/// Minkowski determinant inequality for a family of PSD matrices.
MinkowskiCheck minkowski_check(const std::vector<CMatrix> &family, double tol = kDefaultTol);

}  // namespace septrans
