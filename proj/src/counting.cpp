#include "mirrorcount/counting.hpp"

#include <set>

#include "enumeration.hpp"

namespace mirrorcount {

using detail::EmbTerm;
using detail::RootCounter;
using detail::SubfieldTable;

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::naive_enumeration: return "naive-enumeration";
        case Provenance::last_coordinate_roots: return "last-coordinate-roots";
        case Provenance::twisted_chart: return "twisted-chart";
        case Provenance::burnside: return "burnside";
        case Provenance::orbit_oracle: return "orbit-oracle";
        case Provenance::closed_form: return "closed-form";
    }
    return "unknown";
}

std::string strategy_name(CountStrategy s) {
    return s == CountStrategy::naive ? "naive" : "last-coordinate-roots";
}

namespace {

void check_descriptor(const FieldTower& t, const Hypersurface& X) {
    if (X.q.p != t.p() || X.q.a != t.a())
        throw validation_error("hypersurface base field does not match the tower");
}

int subfield_degree_for(const FieldTower& t, int k) {
    if (k < 1) throw validation_error("k must be positive");
    long long d = static_cast<long long>(t.a()) * k;
    if (d > t.ambient_degree() || t.ambient_degree() % d != 0)
        throw tower_too_small_error("tower lacks the degree-" + std::to_string(d) +
                                    " subfield needed for k = " + std::to_string(k));
    return static_cast<int>(d);
}

}  // namespace

CountRecord count_points(const FieldTower& t, const Hypersurface& X, int k, CountStrategy strategy,
                         BudgetMeter& budget, int threads) {
    check_descriptor(t, X);
    int d = subfield_degree_for(t, k);
    SubfieldTable sub = SubfieldTable::build(t, d);
    auto terms = detail::embed_terms(t, X);
    Integer total = 0;
    if (strategy == CountStrategy::naive) {
        for (int i0 = 0; i0 <= X.n; ++i0)
            total += Integer(static_cast<unsigned long>(detail::count_on_chart(
                t, X.n, i0, sub, {}, terms, budget, threads)));
        return {k, total, Provenance::naive_enumeration};
    }
    RootCounter rc(t, sub);
    for (int i0 = 0; i0 <= X.n; ++i0)
        total += Integer(static_cast<unsigned long>(
            detail::count_roots_on_chart(t, X.n, i0, sub, terms, rc, budget, threads)));
    return {k, total, Provenance::last_coordinate_roots};
}

Integer projective_space_count(QDescriptor q, int n, int k) {
    if (n < 0 || k < 1) throw validation_error("bad projective space parameters");
    Integer qk = q.q_pow(k);
    Integer num;
    mpz_pow_ui(num.get_mpz_t(), qk.get_mpz_t(), static_cast<unsigned long>(n) + 1);
    num -= 1;
    return num / (qk - 1);
}

CountRecord projective_space_count_enumerated(const FieldTower& t, int n, int k,
                                              BudgetMeter& budget, int threads) {
    int d = subfield_degree_for(t, k);
    SubfieldTable sub = SubfieldTable::build(t, d);
    Integer total = 0;
    std::vector<EmbTerm> none;
    for (int i0 = 0; i0 <= n; ++i0)
        total += Integer(static_cast<unsigned long>(
            detail::count_on_chart(t, n, i0, sub, {}, none, budget, threads)));
    return {k, total, Provenance::naive_enumeration};
}

SingularSearchResult jacobian_singular_oracle(const FieldTower& t, const Hypersurface& X,
                                              int search_degree, BudgetMeter& budget) {
    check_descriptor(t, X);
    if (search_degree < 1) throw validation_error("search_degree must be positive");
    constexpr size_t kWitnessCap = 1000;

    auto terms = detail::embed_terms(t, X);
    auto partials = detail::partial_derivative_terms(t, X);
    const int n = X.n;

    SingularSearchResult result;
    std::set<std::vector<uint32_t>> seen;

    auto is_singular_point = [&](const std::vector<FieldElement>& coords) {
        if (!detail::evaluate_terms(t, terms, coords).is_zero()) return false;
        for (int j = 0; j <= n; ++j)
            if (!detail::evaluate_terms(t, partials[j], coords).is_zero()) return false;
        return true;
    };
    auto record = [&](int e, const std::vector<FieldElement>& coords) {
        std::vector<uint32_t> key;
        for (const auto& c : coords) key.insert(key.end(), c.coords.begin(), c.coords.end());
        if (!seen.insert(std::move(key)).second) return;
        if (result.witnesses.size() >= kWitnessCap) {
            result.truncated = true;
            return;
        }
        result.witnesses.push_back(SingularWitness{e, coords});
    };

    // per outer cell, assemble the univariate restrictions of the last
    // partial, the equation and the remaining partials in one descent;
    // candidates are roots of the first and are vetted by exact Horner
    // evaluation of the others
    std::vector<const std::vector<detail::EmbTerm>*> polys;
    polys.push_back(&partials[n]);
    polys.push_back(&terms);
    for (int j = 0; j < n; ++j) polys.push_back(&partials[j]);

    FieldElement acc;
    auto horner_zero = [&](const std::vector<FieldElement>& f, const FieldElement& x) {
        int deg = static_cast<int>(f.size()) - 1;
        while (deg >= 0 && f[static_cast<size_t>(deg)].is_zero()) --deg;
        if (deg < 0) return true;
        acc = f[static_cast<size_t>(deg)];
        for (int j = deg - 1; j >= 0; --j) {
            t.mul(acc, acc, x);
            t.add(acc, acc, f[static_cast<size_t>(j)]);
        }
        return acc.is_zero();
    };

    std::vector<FieldElement> roots;
    std::vector<FieldElement> full(static_cast<size_t>(n) + 1);
    for (int e = 1; e <= search_degree; ++e) {
        int d = subfield_degree_for(t, e);
        SubfieldTable sub = SubfieldTable::build(t, d);
        RootCounter rc(t, sub);
        for (int i0 = 0; i0 <= n; ++i0) {
            if (i0 == n) {
                budget.charge(1);
                std::vector<FieldElement> coords(static_cast<size_t>(n) + 1, t.zero());
                coords[n] = t.one();
                if (is_singular_point(coords)) record(e, coords);
                continue;
            }
            detail::for_each_univariate_system(
                t, n, i0, sub, polys, budget,
                [&](const std::vector<FieldElement>&, const std::vector<FieldElement>& u0) {
                    rc.find_roots(u0, budget, roots);
                    return !roots.empty();
                },
                [&](const std::vector<FieldElement>& coords,
                    const std::vector<std::vector<FieldElement>>& ucoefs) {
                    for (const auto& w : roots) {
                        if (!horner_zero(ucoefs[1], w)) continue;  // not on the variety
                        bool ok = true;
                        for (size_t pi = 2; pi < ucoefs.size() && ok; ++pi)
                            ok = horner_zero(ucoefs[pi], w);
                        if (!ok) continue;
                        full = coords;
                        full[n] = w;
                        if (is_singular_point(full)) record(e, full);
                    }
                });
        }
    }
    return result;
}

}  // namespace mirrorcount
