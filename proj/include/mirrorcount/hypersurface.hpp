#pragma once

#include <vector>

#include "mirrorcount/ff.hpp"
#include "mirrorcount/types.hpp"

namespace mirrorcount {

/// One monomial of a sparse homogeneous polynomial: exponent vector over
/// the n+1 projective coordinates plus a nonzero F_q coefficient.
struct Term {
    std::vector<int> exps;
    FqValue coeff;
};

/// Sparse homogeneous hypersurface in P^n over F_q. Coefficients are
/// stored in tower-independent F_q coordinates so the same surface can
/// be counted inside differently sized ambient fields.
struct Hypersurface {
    int n = 2;
    QDescriptor q;
    int degree = 1;
    std::vector<Term> terms;
};

/// Validates the invariants (homogeneous, nonzero coefficients, distinct
/// exponent vectors) and assembles the hypersurface.
Hypersurface make_hypersurface(QDescriptor q, int n, std::vector<Term> terms);

/// x_0^(n+1) + ... + x_n^(n+1) + lambda * x_0...x_n = 0 in P^n. The
/// product term is omitted when lambda = 0 (the Fermat member).
Hypersurface dwork(QDescriptor q, int n, const FqValue& lambda);

/// x_0^d + ... + x_n^d = 0 (Fermat hypersurfaces, quadrics, ...).
Hypersurface diagonal_hypersurface(QDescriptor q, int n, int d);

/// Smoothness of the degree-(n+1) family member. Away from p | n+1 this
/// is the classical discriminant condition lambda^(n+1) != (-(n+1))^(n+1).
/// When p divides n+1 the Fermat member degenerates to a p-th power and
/// is always singular; for n >= 3 two vanishing coordinates produce a
/// singular point for every lambda, while for n = 2 the members with
/// lambda != 0 are smooth. Validated against jacobian_singular_oracle.
bool is_smooth_dwork(QDescriptor q, int n, const FqValue& lambda);

/// All lambda in F_q whose family member is singular, in canonical
/// enumeration order.
std::vector<FqValue> singular_dwork_lambdas(QDescriptor q, int n);

/// All lambda in F_q, in canonical enumeration order.
std::vector<FqValue> all_lambdas(QDescriptor q);

}  // namespace mirrorcount
