#include "mirrorcount/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "enumeration.hpp"

namespace mirrorcount {

using detail::SubfieldTable;

namespace {

// F_q helper context for group construction (tower-independent values)
struct FqCtx {
    FieldTower t;
    explicit FqCtx(QDescriptor q) : t(build_tower(q.p, q.a, {1})) {}
    FqValue mul(const FqValue& x, const FqValue& y) const {
        return t.extract_fq(t.mul(t.embed_fq(x), t.embed_fq(y)));
    }
    FqValue inv(const FqValue& x) const { return t.extract_fq(t.inverse(t.embed_fq(x))); }
    FqValue one() const { return t.extract_fq(t.one()); }
};

GroupElement identity_element(QDescriptor q, int n) {
    GroupElement e;
    e.scalings.assign(static_cast<size_t>(n) + 1, FqValue::residue(1, q.a));
    for (int i = 0; i <= n; ++i) e.perm.push_back(i);
    return e;
}

// h first, then g
GroupElement compose(const FqCtx& fq, const GroupElement& g, const GroupElement& h) {
    const size_t m = g.scalings.size();
    GroupElement r;
    r.scalings.resize(m);
    r.perm.resize(m);
    for (size_t i = 0; i < m; ++i) {
        r.perm[i] = g.perm[h.perm[i]];
        r.scalings[i] = fq.mul(g.scalings[h.perm[i]], h.scalings[i]);
    }
    return r;
}

std::vector<uint32_t> element_key(const GroupElement& g) {
    std::vector<uint32_t> key;
    for (const auto& s : g.scalings) key.insert(key.end(), s.coords.begin(), s.coords.end());
    for (int v : g.perm) key.push_back(static_cast<uint32_t>(v));
    return key;
}

bool is_scalar_tuple(const GroupElement& g) {
    if (!g.is_identity_perm()) return false;
    for (const auto& s : g.scalings)
        if (!(s == g.scalings[0])) return false;
    return true;
}

int projective_order_impl(const FqCtx& fq, const GroupElement& g) {
    GroupElement acc = g;
    for (int m = 1; m <= static_cast<int>(kGroupOrderCap); ++m) {
        if (is_scalar_tuple(acc)) return m;
        acc = compose(fq, acc, g);
    }
    throw validation_error("element order exceeds the group order cap");
}

// every element must map the defining polynomial to a nonzero scalar
// multiple of itself
void check_equation_invariance(const FqCtx& fq, const Hypersurface& X, const GroupElement& g) {
    std::map<std::vector<int>, FqValue> original;
    for (const auto& term : X.terms) original[term.exps] = term.coeff;
    std::map<std::vector<int>, FqValue> transformed;
    for (const auto& term : X.terms) {
        std::vector<int> e2(term.exps.size());
        FqValue c2 = term.coeff;
        for (size_t i = 0; i < term.exps.size(); ++i) {
            int e = term.exps[g.perm[i]];
            e2[i] = e;
            for (int j = 0; j < e; ++j) c2 = fq.mul(c2, g.scalings[i]);
        }
        transformed[std::move(e2)] = c2;
    }
    std::optional<FqValue> ratio;
    if (original.size() != transformed.size())
        throw validation_error("group element does not preserve the hypersurface");
    for (const auto& [e, c] : transformed) {
        auto it = original.find(e);
        if (it == original.end())
            throw validation_error("group element does not preserve the hypersurface");
        FqValue r = fq.mul(c, fq.inv(it->second));
        if (!ratio)
            ratio = r;
        else if (!(*ratio == r))
            throw validation_error("group element does not preserve the hypersurface");
    }
}

GroupAction finish_action(QDescriptor q, int n, std::optional<Hypersurface> X,
                          std::vector<GroupElement> elements) {
    if (elements.size() > kGroupOrderCap)
        throw validation_error("group order exceeds the cap of " + std::to_string(kGroupOrderCap));
    FqCtx fq(q);

    // elements[0] = identity, rest in deterministic key order
    GroupElement id = identity_element(q, n);
    std::map<std::vector<uint32_t>, GroupElement> by_key;
    for (auto& g : elements) by_key.emplace(element_key(g), g);
    by_key.emplace(element_key(id), id);
    std::vector<GroupElement> ordered;
    ordered.push_back(id);
    for (auto& [key, g] : by_key)
        if (!(g == id)) ordered.push_back(g);

    // group axioms by table
    std::set<std::vector<uint32_t>> keys;
    for (const auto& g : ordered) keys.insert(element_key(g));
    for (const auto& g : ordered) {
        for (const auto& h : ordered) {
            if (!keys.count(element_key(compose(fq, g, h))))
                throw validation_error("element set is not closed under composition");
        }
        bool has_inverse = false;
        for (const auto& h : ordered)
            if (compose(fq, g, h) == identity_element(q, n)) {
                has_inverse = true;
                break;
            }
        if (!has_inverse) throw validation_error("element set lacks inverses");
    }

    GroupAction A;
    A.n = n;
    A.q = q;
    A.variety = std::move(X);
    A.elements = std::move(ordered);
    long long e = 1;
    for (const auto& g : A.elements) {
        if (A.variety) check_equation_invariance(fq, *A.variety, g);
        e = std::lcm(e, static_cast<long long>(projective_order_impl(fq, g)));
    }
    A.exponent = static_cast<int>(e);
    return A;
}

}  // namespace

int projective_order(QDescriptor q, const GroupElement& g) {
    FqCtx fq(q);
    return projective_order_impl(fq, g);
}

GroupAction dwork_diagonal_group(QDescriptor q, const Hypersurface& X) {
    const int n = X.n;
    FqCtx fq(q);
    auto mu = fq.t.roots_of_unity(q.a, static_cast<uint64_t>(n) + 1);
    std::vector<FqValue> zeta;
    for (const auto& z : mu) zeta.push_back(fq.t.extract_fq(z));
    // choose the last n coordinates freely; the first is forced by the
    // product-one constraint
    std::vector<GroupElement> elements;
    std::vector<size_t> pick(static_cast<size_t>(n), 0);
    for (;;) {
        GroupElement g = identity_element(q, n);
        FqValue prod = fq.one();
        for (int i = 0; i < n; ++i) {
            g.scalings[i + 1] = zeta[pick[i]];
            prod = fq.mul(prod, zeta[pick[i]]);
        }
        g.scalings[0] = fq.inv(prod);
        elements.push_back(std::move(g));
        int j = n - 1;
        while (j >= 0 && pick[j] + 1 == zeta.size()) pick[j--] = 0;
        if (j < 0) break;
        ++pick[j];
    }
    return finish_action(q, n, X, std::move(elements));
}

GroupAction trivial_group(QDescriptor q, int n, std::optional<Hypersurface> X) {
    return finish_action(q, n, std::move(X), {identity_element(q, n)});
}

GroupAction permutation_group(QDescriptor q, int n, std::optional<Hypersurface> X,
                              const std::vector<std::vector<int>>& generators) {
    std::vector<GroupElement> gens;
    for (const auto& perm : generators) {
        if (perm.size() != static_cast<size_t>(n) + 1)
            throw validation_error("permutation length must be n+1");
        std::vector<bool> hit(perm.size(), false);
        GroupElement g = identity_element(q, n);
        for (size_t i = 0; i < perm.size(); ++i) {
            if (perm[i] < 0 || perm[i] > n || hit[perm[i]])
                throw validation_error("not a permutation of 0..n");
            hit[perm[i]] = true;
            g.perm[i] = perm[i];
        }
        gens.push_back(std::move(g));
    }
    // closure under composition
    FqCtx fq(q);
    std::map<std::vector<uint32_t>, GroupElement> closure;
    GroupElement id = identity_element(q, n);
    closure.emplace(element_key(id), id);
    std::vector<GroupElement> frontier{id};
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier) {
            for (const auto& h : gens) {
                GroupElement c = compose(fq, h, g);
                auto key = element_key(c);
                if (closure.emplace(key, c).second) next.push_back(std::move(c));
                if (closure.size() > kGroupOrderCap)
                    throw validation_error("group order exceeds the cap");
            }
        }
        frontier = std::move(next);
    }
    std::vector<GroupElement> elements;
    for (auto& [k, g] : closure) elements.push_back(std::move(g));
    return finish_action(q, n, std::move(X), std::move(elements));
}

namespace {

std::vector<detail::EmbTerm> target_terms(const FieldTower& t, const GroupAction& A) {
    if (!A.variety) return {};
    return detail::embed_terms(t, *A.variety);
}

// first-nonzero-scaled projective equality: y ~ x where x is a
// normalized representative (first nonzero coordinate = 1)
bool proportional_to_representative(const FieldTower& t, const std::vector<FieldElement>& y,
                                    const std::vector<FieldElement>& x, FieldElement& scratch) {
    size_t i0 = 0;
    while (i0 < x.size() && x[i0].is_zero()) ++i0;
    const FieldElement& lam = y[i0];
    if (lam.is_zero()) return false;
    for (size_t j = 0; j < x.size(); ++j) {
        if (j == i0) continue;
        t.mul(scratch, lam, x[j]);
        if (!(scratch == y[j])) return false;
    }
    return true;
}

CountRecord lambda_kummer(const FieldTower& t, const GroupAction& A, const GroupElement& g,
                          int k, BudgetMeter& budget, int threads) {
    const int n = A.n;
    long long dk = static_cast<long long>(t.a()) * k;
    if (dk > t.ambient_degree() || t.ambient_degree() % dk != 0)
        throw tower_too_small_error("tower lacks the degree needed for k = " + std::to_string(k));
    SubfieldTable sub = SubfieldTable::build(t, static_cast<int>(dk));
    auto terms = target_terms(t, A);

    std::vector<FieldElement> zeta;
    for (const auto& s : g.scalings) zeta.push_back(t.embed_fq(s));

    Integer total = 0;
    for (int i0 = 0; i0 <= n; ++i0) {
        // fixed points in this chart: x_i in s_i * F_{q^k} for each later
        // coordinate, where s_i^(q^k - 1) = zeta_{i0} / zeta_i
        std::vector<FieldElement> mult(static_cast<size_t>(n) + 1, t.one());
        for (int i = i0 + 1; i <= n; ++i) {
            FieldElement u = t.mul(zeta[i0], t.inverse(zeta[i]));
            mult[i] = t.kummer_solve(k, u).s;
        }
        total += Integer(static_cast<unsigned long>(
            detail::count_on_chart(t, n, i0, sub, mult, terms, budget, threads)));
    }
    return {k, total, Provenance::twisted_chart};
}

CountRecord lambda_brute(const FieldTower& t, const GroupAction& A, const GroupElement& g,
                         int k, BudgetMeter& budget, int threads) {
    const int n = A.n;
    int m = projective_order(A.q, g);
    long long dm = static_cast<long long>(t.a()) * k * m;
    if (dm > t.ambient_degree() || t.ambient_degree() % dm != 0)
        throw tower_too_small_error("tower lacks degree a*k*m = " + std::to_string(dm) +
                                    " for the brute twisted count");
    SubfieldTable sub = SubfieldTable::build(t, static_cast<int>(dm));
    auto terms = target_terms(t, A);

    std::vector<FieldElement> zeta;
    for (const auto& s : g.scalings) zeta.push_back(t.embed_fq(s));

    uint64_t cnt = detail::count_points_where(
        t, n, sub, terms, budget, threads, [&](const std::vector<FieldElement>& coords) {
            // y = g(F^k(x)), then test y ~ x
            thread_local std::vector<FieldElement> y;
            thread_local FieldElement scratch;
            y.assign(coords.size(), FieldElement{});
            for (int i = 0; i <= n; ++i)
                y[g.perm[i]] = t.mul(zeta[i], t.power_q(coords[i], k));
            return proportional_to_representative(t, y, coords, scratch);
        });
    return {k, Integer(static_cast<unsigned long>(cnt)), Provenance::twisted_chart};
}

}  // namespace

CountRecord lambda_twisted(const FieldTower& t, const GroupAction& A, const GroupElement& g,
                           int k, LambdaPath path, BudgetMeter& budget, int threads) {
    if (g.scalings.size() != static_cast<size_t>(A.n) + 1)
        throw validation_error("group element has the wrong arity");
    if (path == LambdaPath::automatic) path = g.is_diagonal() ? LambdaPath::kummer : LambdaPath::brute;
    if (path == LambdaPath::kummer) {
        if (!g.is_diagonal())
            throw validation_error("the Kummer chart path requires a diagonal element");
        return lambda_kummer(t, A, g, k, budget, threads);
    }
    return lambda_brute(t, A, g, k, budget, threads);
}

CountRecord burnside_quotient_count(const FieldTower& t, const GroupAction& A, int k,
                                    LambdaPath path, BudgetMeter& budget, int threads) {
    const size_t m = A.elements.size();
    std::vector<Integer> values(m);
    std::vector<std::exception_ptr> errs(m);
    std::atomic<size_t> next{0};
    int workers = std::max(1, std::min<int>(threads, static_cast<int>(m)));
    auto body = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= m) return;
            try {
                values[i] = lambda_twisted(t, A, A.elements[i], k, path, budget, 1).value;
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);

    Integer sum = 0;
    for (const auto& v : values) sum += v;
    Integer order = A.order();
    if (sum % order != 0)
        throw internal_consistency_error(
            "sum of twisted fixed-point numbers is not divisible by the group order (" +
            sum.get_str() + " vs " + order.get_str() + ")");
    return {k, sum / order, Provenance::burnside};
}

OrbitOracleResult orbit_oracle(const FieldTower& t, const GroupAction& A, int k,
                               BudgetMeter& budget) {
    const int n = A.n;
    long long d = static_cast<long long>(t.a()) * k * A.exponent;
    if (d > t.ambient_degree() || t.ambient_degree() % d != 0)
        throw tower_too_small_error("tower lacks degree a*k*e = " + std::to_string(d) +
                                    " for the orbit oracle");
    SubfieldTable sub = SubfieldTable::build(t, static_cast<int>(d));
    auto terms = target_terms(t, A);

    std::vector<std::vector<FieldElement>> points;
    detail::visit_points(t, n, sub, terms, budget,
                         [&](const std::vector<FieldElement>& coords) { points.push_back(coords); });

    auto flat_key = [](const std::vector<FieldElement>& coords) {
        std::vector<uint32_t> key;
        for (const auto& c : coords) key.insert(key.end(), c.coords.begin(), c.coords.end());
        return key;
    };
    std::map<std::vector<uint32_t>, size_t> index;
    for (size_t i = 0; i < points.size(); ++i) index.emplace(flat_key(points[i]), i);

    std::vector<std::vector<FieldElement>> gz;  // embedded scalings per element
    for (const auto& g : A.elements) {
        std::vector<FieldElement> z;
        for (const auto& s : g.scalings) z.push_back(t.embed_fq(s));
        gz.push_back(std::move(z));
    }

    auto canonicalize = [&](std::vector<FieldElement> y) {
        size_t i0 = 0;
        while (i0 < y.size() && y[i0].is_zero()) ++i0;
        FieldElement inv = t.inverse(y[i0]);
        for (auto& c : y) c = t.mul(c, inv);
        return y;
    };
    auto apply = [&](size_t gi, const std::vector<FieldElement>& x) {
        std::vector<FieldElement> y(x.size());
        const auto& g = A.elements[gi];
        for (int i = 0; i <= n; ++i) y[g.perm[i]] = t.mul(gz[gi][i], x[i]);
        return canonicalize(std::move(y));
    };
    auto frob_image = [&](const std::vector<FieldElement>& x) {
        std::vector<FieldElement> y(x.size());
        for (size_t i = 0; i < x.size(); ++i) y[i] = t.power_q(x[i], k);
        return canonicalize(std::move(y));
    };

    OrbitOracleResult result;
    result.count = 0;
    std::vector<bool> visited(points.size(), false);
    Integer order = A.order();
    for (size_t i = 0; i < points.size(); ++i) {
        if (visited[i]) continue;
        std::set<size_t> orbit;
        Integer stab = 0;
        for (size_t gi = 0; gi < A.elements.size(); ++gi) {
            auto img = apply(gi, points[i]);
            auto it = index.find(flat_key(img));
            if (it == index.end())
                throw internal_consistency_error("group image left the enumerated point set");
            orbit.insert(it->second);
            if (it->second == i) stab += 1;
        }
        OrbitRecord rec;
        rec.stabilizer_size = stab;
        if (Integer(static_cast<unsigned long>(orbit.size())) * stab != order)
            throw internal_consistency_error("orbit-stabilizer identity failed");
        int stable_members = 0;
        for (size_t pi : orbit) {
            visited[pi] = true;
            rec.points.push_back(points[pi]);
            auto fi = index.find(flat_key(frob_image(points[pi])));
            if (fi == index.end())
                throw internal_consistency_error("Frobenius image left the enumerated point set");
            if (orbit.count(fi->second)) ++stable_members;
        }
        if (stable_members != 0 && stable_members != static_cast<int>(orbit.size()))
            throw internal_consistency_error("Frobenius stability is not orbit-constant");
        rec.frobenius_stable = stable_members == static_cast<int>(orbit.size());
        if (rec.frobenius_stable) result.count += 1;
        result.orbits.push_back(std::move(rec));
    }
    return result;
}

}  // namespace mirrorcount
