#include "mirrorcount/hodge.hpp"

namespace mirrorcount {

HodgeData hodge_numbers_hypersurface(int n, int d) {
    if (n < 2 || d < 2) throw validation_error("hodge numbers need n >= 2 and d >= 2");
    // expand (1 + t + ... + t^(d-2))^(n+1)
    std::vector<Integer> poly{Integer(1)};
    std::vector<Integer> base(static_cast<size_t>(d) - 1, Integer(1));
    for (int i = 0; i <= n; ++i) {
        std::vector<Integer> next(poly.size() + base.size() - 1, Integer(0));
        for (size_t a = 0; a < poly.size(); ++a)
            for (size_t b = 0; b < base.size(); ++b) next[a + b] += poly[a];
        poly = std::move(next);
    }
    HodgeData h;
    h.n = n;
    h.d = d;
    h.weight = n - 1;
    h.primitive.assign(static_cast<size_t>(n), Integer(0));
    for (int p = 0; p <= n - 1; ++p) {
        long idx = static_cast<long>(p + 1) * d - (n + 1);
        Integer coeff = 0;
        if (idx >= 0 && idx < static_cast<long>(poly.size())) coeff = poly[static_cast<size_t>(idx)];
        h.primitive[static_cast<size_t>(n - 1 - p)] = coeff;  // h^{n-1-p, p}
    }
    return h;
}

HodgePolygon hodge_polygon(const HodgeData& h) {
    HodgePolygon hp;
    for (int i = 0; i <= h.weight; ++i) {
        const Integer& mult = h.primitive[static_cast<size_t>(i)];
        if (mult == 0) continue;
        if (!mult.fits_sint_p()) throw validation_error("hodge multiplicity too large");
        hp.slopes.emplace_back(Rational(i), static_cast<int>(mult.get_si()));
    }
    return hp;
}

namespace {

// ordinates of a lower hull given ascending slopes with multiplicities
std::vector<Rational> hull_ordinates(const std::vector<std::pair<Rational, int>>& slopes) {
    std::vector<Rational> y{Rational(0)};
    for (const auto& [s, m] : slopes)
        for (int i = 0; i < m; ++i) y.push_back(y.back() + s);
    return y;
}

}  // namespace

PolygonComparison newton_above_hodge(const NewtonPolygon& np, const HodgePolygon& hp) {
    if (np.length() != hp.length())
        throw validation_error("polygon lengths differ: " + std::to_string(np.length()) + " vs " +
                               std::to_string(hp.length()));
    PolygonComparison cmp;
    auto ny = hull_ordinates(np.slopes);
    auto hy = hull_ordinates(hp.slopes);
    for (size_t j = 0; j < ny.size(); ++j) {
        if (ny[j] < hy[j]) {
            cmp.pass = false;
            cmp.detail = "Newton lies below Hodge at abscissa " + std::to_string(j);
            return cmp;
        }
    }
    if (ny.back() != hy.back()) {
        cmp.pass = false;
        cmp.detail = "endpoint ordinates differ";
        return cmp;
    }
    cmp.pass = true;
    return cmp;
}

}  // namespace mirrorcount
