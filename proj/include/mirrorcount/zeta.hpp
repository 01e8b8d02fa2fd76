#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mirrorcount/congruence.hpp"
#include "mirrorcount/types.hpp"

namespace mirrorcount {

/// Integer polynomial, constant term first.
using IntPoly = std::vector<Integer>;

std::string int_poly_str(const IntPoly& f);

/// Rational function N(T)/D(T) with integer coefficients and constant
/// terms 1, matching exp(sum N_k T^k / k) to order L. Reciprocal roots
/// are never extracted numerically; every verdict about them is phrased
/// on the coefficients.
struct ZetaRatio {
    IntPoly numerator{Integer(1)};
    IntPoly denominator{Integer(1)};
    int order = 0;
    bool ok = false;         // a consistent fit exists within the degree cap
    bool saturated = false;  // the fit on the length-(L-1) prefix exists and agrees
    bool numerator_squarefree = true;
    bool denominator_squarefree = true;
    std::string note;
};

/// Minimal-degree rational reconstruction of the zeta-type series of a
/// count sequence: forms exp(sum_{k<=L} N_k T^k / k) over the rationals
/// and solves the Hankel-style linear system for the smallest numerator
/// and denominator degrees (each capped at floor(L/2)) that reproduce
/// all L coefficients. Inconclusive fits are reported, not thrown.
ZetaRatio fit_ratio(const CountSequence& seq);

/// Re-expands the fitted ratio into counts N_1..N_L (exact).
std::vector<Integer> counts_from_ratio(const ZetaRatio& z, int L);

struct DivisibilityReport {
    bool pass = false;
    std::string detail;  // first failing coefficient, for auditability
};

/// Passes iff ord_q(c_j) >= j for every coefficient of both polynomials,
/// i.e. every Newton slope is at least 1 and every reciprocal root is
/// divisible by q.
DivisibilityReport check_root_divisibility(const ZetaRatio& z, QDescriptor q);

struct CurveSanityReport {
    bool pass = false;
    bool degree_ok = false;
    bool functional_equation = false;
    bool trace_bound = true;  // a^2 <= 4q, genus 1 only
};

/// Weil sanity checks for a fitted smooth-curve ratio: numerator degree
/// 2g, functional equation T^(2g) q^g P(1/(qT)) = P(T), and the genus-1
/// trace bound checked as a^2 <= 4q in exact integers.
CurveSanityReport curve_sanity(const ZetaRatio& z, QDescriptor q, int genus);

/// Lower convex hull of {(j, ord_q(c_j))}; slopes ascending with
/// multiplicities. Zero coefficients are omitted from the hull.
struct NewtonPolygon {
    std::vector<std::pair<long, Rational>> vertices;
    std::vector<std::pair<Rational, int>> slopes;
    long length() const {
        long s = 0;
        for (const auto& [sl, m] : slopes) s += m;
        return s;
    }
};

NewtonPolygon newton_polygon(const IntPoly& poly, QDescriptor q);

}  // namespace mirrorcount
