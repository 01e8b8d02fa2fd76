#include "mirrorcount/hypersurface.hpp"

#include <algorithm>
#include <set>

namespace mirrorcount {

Hypersurface make_hypersurface(QDescriptor q, int n, std::vector<Term> terms) {
    if (n < 1) throw validation_error("projective dimension must be at least 1");
    if (terms.empty()) throw validation_error("a hypersurface needs at least one term");
    int degree = -1;
    std::set<std::vector<int>> seen;
    for (const auto& t : terms) {
        if (static_cast<int>(t.exps.size()) != n + 1)
            throw validation_error("exponent vector length must be n+1");
        int total = 0;
        for (int e : t.exps) {
            if (e < 0) throw validation_error("negative exponent");
            total += e;
        }
        if (degree < 0) degree = total;
        if (total != degree) throw validation_error("terms are not homogeneous of equal degree");
        if (t.coeff.is_zero()) throw validation_error("zero coefficient");
        if (t.coeff.coords.size() != static_cast<size_t>(q.a))
            throw validation_error("coefficient has wrong F_q coordinate length");
        if (!seen.insert(t.exps).second) throw validation_error("duplicate exponent vector");
    }
    if (degree < 1) throw validation_error("degree must be at least 1");
    return Hypersurface{n, q, degree, std::move(terms)};
}

Hypersurface dwork(QDescriptor q, int n, const FqValue& lambda) {
    if (n < 2) throw validation_error("the family needs n >= 2");
    std::vector<Term> terms;
    for (int i = 0; i <= n; ++i) {
        std::vector<int> e(static_cast<size_t>(n + 1), 0);
        e[i] = n + 1;
        terms.push_back(Term{std::move(e), FqValue::residue(1, q.a)});
    }
    if (!lambda.is_zero()) {
        std::vector<int> e(static_cast<size_t>(n + 1), 1);
        terms.push_back(Term{std::move(e), lambda});
    }
    return make_hypersurface(q, n, std::move(terms));
}

Hypersurface diagonal_hypersurface(QDescriptor q, int n, int d) {
    std::vector<Term> terms;
    for (int i = 0; i <= n; ++i) {
        std::vector<int> e(static_cast<size_t>(n + 1), 0);
        e[i] = d;
        terms.push_back(Term{std::move(e), FqValue::residue(1, q.a)});
    }
    return make_hypersurface(q, n, std::move(terms));
}

bool is_smooth_dwork(QDescriptor q, int n, const FqValue& lambda) {
    if ((n + 1) % static_cast<int>(q.p) == 0) {
        if (n == 2) return !lambda.is_zero();
        return false;
    }
    auto t = build_tower(q.p, q.a, {1});
    FieldElement lam = t.embed_fq(lambda);
    FieldElement lhs = t.pow(lam, static_cast<uint64_t>(n + 1));
    FieldElement base = t.neg(t.from_residue(static_cast<uint64_t>(n + 1)));
    FieldElement rhs = t.pow(base, static_cast<uint64_t>(n + 1));
    return !(lhs == rhs);
}

std::vector<FqValue> all_lambdas(QDescriptor q) {
    auto t = build_tower(q.p, q.a, {1});
    auto elems = t.enumerate_subfield(q.a);
    std::vector<FqValue> out;
    out.reserve(elems.size());
    for (const auto& x : elems) out.push_back(t.extract_fq(x));
    return out;
}

std::vector<FqValue> singular_dwork_lambdas(QDescriptor q, int n) {
    std::vector<FqValue> out;
    for (const auto& lam : all_lambdas(q))
        if (!is_smooth_dwork(q, n, lam)) out.push_back(lam);
    return out;
}

}  // namespace mirrorcount
