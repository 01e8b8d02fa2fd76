#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mirrorcount/types.hpp"
#include "mirrorcount/zeta.hpp"

namespace mirrorcount {

/// Primitive middle Hodge numbers of a smooth degree-d hypersurface in
/// P^n (characteristic-zero values): primitive[i] = h^{i, w-i}_prim for
/// i = 0..w with weight w = n-1.
struct HodgeData {
    int n = 2;
    int d = 2;
    int weight = 1;
    std::vector<Integer> primitive;
};

/// Computes the primitive Hodge numbers by exact expansion of
/// ((1 - t^(d-1)) / (1 - t))^(n+1): h^{n-1-p, p}_prim is the coefficient
/// of t^((p+1)d - (n+1)).
HodgeData hodge_numbers_hypersurface(int n, int d);

/// Slope p with multiplicity h^{p, w-p}, ascending.
struct HodgePolygon {
    std::vector<std::pair<Rational, int>> slopes;
    long length() const {
        long s = 0;
        for (const auto& [sl, m] : slopes) s += m;
        return s;
    }
};

HodgePolygon hodge_polygon(const HodgeData& h);

struct PolygonComparison {
    bool pass = false;
    std::string detail;
};

/// Passes iff the two polygons have equal total length, the Newton hull
/// ordinate is >= the Hodge hull ordinate at every integer abscissa, and
/// the endpoints agree.
PolygonComparison newton_above_hodge(const NewtonPolygon& np, const HodgePolygon& hp);

}  // namespace mirrorcount
