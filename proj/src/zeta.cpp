#include "mirrorcount/zeta.hpp"

#include <algorithm>

namespace mirrorcount {

namespace {

using QPoly = std::vector<Rational>;

void qp_trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// z-series of exp(sum N_k T^k / k) up to order L via j*z_j = sum N_i z_{j-i}
QPoly log_derivative_series(const CountSequence& seq, int L) {
    QPoly z(static_cast<size_t>(L) + 1, Rational(0));
    z[0] = 1;
    for (int j = 1; j <= L; ++j) {
        Rational s(0);
        for (int i = 1; i <= j; ++i) s += Rational(seq.values[i - 1]) * z[j - i];
        z[j] = s / j;
    }
    return z;
}

// Gaussian elimination; returns false when inconsistent. Free variables
// are set to zero, so the solution is deterministic.
bool solve_rational(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs,
                    std::vector<Rational>& out) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    out.assign(cols, Rational(0));
    std::vector<long> pivot_col(rows, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        std::swap(rhs[r], rhs[sel]);
        Rational inv = 1 / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col[r] = static_cast<long>(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return false;
    for (size_t i = 0; i < r; ++i) out[static_cast<size_t>(pivot_col[i])] = rhs[i];
    return true;
}

QPoly qp_gcd(QPoly a, QPoly b) {
    qp_trim(a);
    qp_trim(b);
    auto make_monic = [](QPoly f) {
        if (f.empty()) return f;
        Rational inv = 1 / f.back();
        for (auto& c : f) c *= inv;
        return f;
    };
    while (!b.empty()) {
        b = make_monic(std::move(b));
        // remainder of a by b
        while (a.size() >= b.size() && !a.empty()) {
            Rational c = a.back();
            size_t shift = a.size() - b.size();
            if (c != 0)
                for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
            a.pop_back();
            qp_trim(a);
        }
        std::swap(a, b);
    }
    return make_monic(std::move(a));
}

bool integral(const QPoly& f, IntPoly& out) {
    out.clear();
    for (const auto& c : f) {
        Rational r = c;
        r.canonicalize();
        if (r.get_den() != 1) return false;
        out.push_back(r.get_num());
    }
    return out.empty() || true;
}

bool squarefree(const IntPoly& f) {
    if (f.size() <= 2) return true;
    QPoly a, d;
    for (const auto& c : f) a.emplace_back(c);
    for (size_t j = 1; j < f.size(); ++j) d.emplace_back(f[j] * static_cast<long>(j));
    QPoly g = qp_gcd(a, d);
    return g.size() <= 1;
}

struct FitCandidate {
    IntPoly num, den;
    bool found = false;
};

// minimal-degree Pade-style fit of the series z (degree caps per side),
// with integer coefficients and constant terms 1
FitCandidate pade_fit(const QPoly& z, int L) {
    const int cap = L / 2;
    FitCandidate best;
    for (int total = 0; total <= 2 * cap && !best.found; ++total) {
        for (int dn = 0; dn <= std::min(total, cap); ++dn) {
            int dd = total - dn;
            if (dd > cap) continue;
            // unknowns q_1..q_dd; equations: coeff of T^m in z*Q vanishes
            // for m = dn+1..L
            std::vector<std::vector<Rational>> m;
            std::vector<Rational> rhs;
            for (int row = dn + 1; row <= L; ++row) {
                std::vector<Rational> eq(static_cast<size_t>(dd), Rational(0));
                for (int i = 1; i <= dd; ++i)
                    if (row - i >= 0) eq[i - 1] = z[row - i];
                m.push_back(std::move(eq));
                rhs.push_back(-z[row]);
            }
            std::vector<Rational> qs;
            if (!solve_rational(std::move(m), std::move(rhs), qs)) continue;
            QPoly den(static_cast<size_t>(dd) + 1, Rational(0));
            den[0] = 1;
            for (int i = 1; i <= dd; ++i) den[i] = qs[i - 1];
            // numerator = truncation of z*den to degree dn; verify the tail
            QPoly num(static_cast<size_t>(dn) + 1, Rational(0));
            bool tail_ok = true;
            for (int mdeg = 0; mdeg <= L; ++mdeg) {
                Rational c(0);
                for (int i = 0; i <= dd && i <= mdeg; ++i) c += den[i] * z[mdeg - i];
                if (mdeg <= dn)
                    num[mdeg] = c;
                else if (c != 0) {
                    tail_ok = false;
                    break;
                }
            }
            if (!tail_ok) continue;
            IntPoly inum, iden;
            if (!integral(num, inum) || !integral(den, iden)) continue;
            // defensive gcd-freeness; at minimal total degree the pair is
            // already coprime
            QPoly g = qp_gcd(num, den);
            if (g.size() > 1) continue;
            if (inum.empty()) inum.push_back(Integer(0));
            best.num = std::move(inum);
            best.den = std::move(iden);
            best.found = true;
            break;
        }
    }
    return best;
}

}  // namespace

std::string int_poly_str(const IntPoly& f) {
    std::string s = "[";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) s += ", ";
        s += f[i].get_str();
    }
    return s + "]";
}

ZetaRatio fit_ratio(const CountSequence& seq) {
    const int L = seq.length();
    if (L < 2) throw validation_error("fit_ratio needs at least two counts");
    QPoly z = log_derivative_series(seq, L);
    ZetaRatio out;
    out.order = L;
    FitCandidate fit = pade_fit(z, L);
    if (!fit.found) {
        out.ok = false;
        out.note = "no consistent rational approximant with degrees <= " + std::to_string(L / 2);
        return out;
    }
    out.ok = true;
    out.numerator = fit.num;
    out.denominator = fit.den;
    out.numerator_squarefree = squarefree(out.numerator);
    out.denominator_squarefree = squarefree(out.denominator);
    if (L >= 3) {
        CountSequence prefix{seq.q, {seq.values.begin(), seq.values.end() - 1}};
        QPoly zp = log_derivative_series(prefix, L - 1);
        FitCandidate prev = pade_fit(zp, L - 1);
        out.saturated = prev.found && prev.num == fit.num && prev.den == fit.den;
    }
    return out;
}

std::vector<Integer> counts_from_ratio(const ZetaRatio& z, int L) {
    if (!z.ok) throw validation_error("cannot expand an inconclusive fit");
    // w = 1/denominator as a power series (integer coefficients since the
    // constant term is 1), then zs = numerator * w
    std::vector<Integer> w(static_cast<size_t>(L) + 1, Integer(0));
    w[0] = 1;
    for (int m = 1; m <= L; ++m) {
        Integer s = 0;
        for (size_t i = 1; i < z.denominator.size() && static_cast<int>(i) <= m; ++i)
            s += z.denominator[i] * w[m - i];
        w[m] = -s;
    }
    std::vector<Integer> zs(static_cast<size_t>(L) + 1, Integer(0));
    for (int m = 0; m <= L; ++m) {
        Integer s = 0;
        for (size_t i = 0; i < z.numerator.size() && static_cast<int>(i) <= m; ++i)
            s += z.numerator[i] * w[m - i];
        zs[m] = s;
    }
    // invert j*z_j = sum N_i z_{j-i}
    std::vector<Integer> counts(static_cast<size_t>(L), Integer(0));
    for (int j = 1; j <= L; ++j) {
        Integer s = zs[j] * j;
        for (int i = 1; i < j; ++i) s -= counts[i - 1] * zs[j - i];
        counts[j - 1] = s;  // z_0 = 1
    }
    return counts;
}

DivisibilityReport check_root_divisibility(const ZetaRatio& z, QDescriptor q) {
    DivisibilityReport rep;
    rep.pass = true;
    auto check_side = [&](const IntPoly& f, const char* side) {
        if (f.empty() || f[0] != 1) {
            rep.pass = false;
            rep.detail = std::string(side) + " lacks constant term 1";
            return;
        }
        for (size_t j = 1; j < f.size(); ++j) {
            if (!(ord_q(f[j], q) >= static_cast<long>(j))) {
                rep.pass = false;
                if (rep.detail.empty())
                    rep.detail = std::string(side) + " coefficient " + std::to_string(j) + " = " +
                                 f[j].get_str() + " has ord_q < " + std::to_string(j);
                return;
            }
        }
    };
    check_side(z.numerator, "numerator");
    check_side(z.denominator, "denominator");
    return rep;
}

CurveSanityReport curve_sanity(const ZetaRatio& z, QDescriptor q, int genus) {
    CurveSanityReport rep;
    const IntPoly& P = z.numerator;
    int deg = static_cast<int>(P.size()) - 1;
    rep.degree_ok = deg == 2 * genus;
    rep.functional_equation = rep.degree_ok;
    if (rep.degree_ok) {
        Integer qv = q.q();
        for (int j = 0; j <= genus && rep.functional_equation; ++j) {
            Integer scale;
            mpz_pow_ui(scale.get_mpz_t(), qv.get_mpz_t(), static_cast<unsigned long>(genus - j));
            if (P[2 * genus - j] != P[j] * scale) rep.functional_equation = false;
        }
    }
    if (genus == 1 && rep.degree_ok) {
        Integer a = -P[1];
        rep.trace_bound = a * a <= 4 * q.q();
    }
    rep.pass = rep.degree_ok && rep.functional_equation && rep.trace_bound;
    return rep;
}

NewtonPolygon newton_polygon(const IntPoly& poly, QDescriptor q) {
    IntPoly f = poly;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.empty() || f[0] != 1)
        throw validation_error("newton_polygon requires constant term 1");
    // finite-ordinate points
    std::vector<std::pair<long, Rational>> pts;
    for (size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0) continue;
        OrdQ o = ord_q(f[j], q);
        pts.emplace_back(static_cast<long>(j), Rational(o.ord_p(), o.den()));
    }
    for (auto& [x, y] : pts) y.canonicalize();
    // lower convex hull, x strictly increasing
    std::vector<std::pair<long, Rational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& [x1, y1] = hull[hull.size() - 2];
            const auto& [x2, y2] = hull[hull.size() - 1];
            // keep (x2,y2) only if it lies strictly below the chord to pt
            Rational lhs = (y2 - y1) * (pt.first - x1);
            Rational rhs = (pt.second - y1) * (x2 - x1);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    NewtonPolygon np;
    np.vertices = hull;
    for (size_t i = 1; i < hull.size(); ++i) {
        Rational slope = (hull[i].second - hull[i - 1].second) / (hull[i].first - hull[i - 1].first);
        slope.canonicalize();
        int mult = static_cast<int>(hull[i].first - hull[i - 1].first);
        if (!np.slopes.empty() && np.slopes.back().first == slope)
            np.slopes.back().second += mult;
        else
            np.slopes.emplace_back(slope, mult);
    }
    return np;
}

}  // namespace mirrorcount
