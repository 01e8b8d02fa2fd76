#include "enumeration.hpp"

#include <algorithm>

namespace mirrorcount::detail {

namespace {

using FPoly = std::vector<FieldElement>;  // constant term first

void fp_trim(FPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

FPoly fp_rem(const FieldTower& t, FPoly x, const FPoly& f) {
    // f monic
    const int df = static_cast<int>(f.size()) - 1;
    FieldElement tmp;
    while (static_cast<int>(x.size()) - 1 >= df) {
        FieldElement c = x.back();
        int shift = static_cast<int>(x.size()) - 1 - df;
        if (!c.is_zero()) {
            for (int j = 0; j < df; ++j) {
                t.mul(tmp, c, f[j]);
                t.sub(x[shift + j], x[shift + j], tmp);
            }
        }
        x.pop_back();
        fp_trim(x);
    }
    return x;
}

FPoly fp_mulmod(const FieldTower& t, const FPoly& a, const FPoly& b, const FPoly& f) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, t.zero());
    FieldElement tmp;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            t.mul(tmp, a[i], b[j]);
            t.add(r[i + j], r[i + j], tmp);
        }
    }
    fp_trim(r);
    return fp_rem(t, std::move(r), f);
}

FPoly fp_make_monic(const FieldTower& t, FPoly f) {
    fp_trim(f);
    if (f.empty()) return f;
    if (f.back() == t.one()) return f;
    FieldElement inv = t.inverse(f.back());
    for (auto& c : f) c = t.mul(c, inv);
    return f;
}

FPoly fp_gcd(const FieldTower& t, FPoly a, FPoly b) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FPoly m = fp_make_monic(t, b);
        FPoly r = fp_rem(t, std::move(a), m);
        a = std::move(m);
        b = std::move(r);
    }
    return a;
}

}  // namespace

std::vector<EmbTerm> embed_terms(const FieldTower& t, const Hypersurface& X) {
    std::vector<EmbTerm> out;
    out.reserve(X.terms.size());
    for (const auto& term : X.terms) out.push_back(EmbTerm{t.embed_fq(term.coeff), term.exps});
    return out;
}

std::vector<std::vector<EmbTerm>> partial_derivative_terms(const FieldTower& t,
                                                           const Hypersurface& X) {
    std::vector<std::vector<EmbTerm>> out(static_cast<size_t>(X.n) + 1);
    for (int j = 0; j <= X.n; ++j) {
        for (const auto& term : X.terms) {
            int e = term.exps[j];
            if (e % static_cast<int>(t.p()) == 0) continue;  // includes e == 0
            EmbTerm d;
            d.coeff = t.mul(t.embed_fq(term.coeff), t.from_residue(static_cast<uint64_t>(e)));
            d.exps = term.exps;
            d.exps[j] -= 1;
            out[j].push_back(std::move(d));
        }
    }
    return out;
}

FieldElement evaluate_terms(const FieldTower& t, const std::vector<EmbTerm>& terms,
                            const std::vector<FieldElement>& coords) {
    FieldElement acc = t.zero();
    for (const auto& term : terms) {
        FieldElement v = term.coeff;
        for (size_t j = 0; j < term.exps.size(); ++j) {
            if (term.exps[j] == 0) continue;
            v = t.mul(v, t.pow(coords[j], static_cast<uint64_t>(term.exps[j])));
            if (v.is_zero()) break;
        }
        t.add(acc, acc, v);
    }
    return acc;
}

void charge_cells(BudgetMeter& budget, const Integer& cells) {
    if (!cells.fits_ulong_p()) throw budget_error(UINT64_MAX, budget.limit());
    budget.charge(mpz_get_ui(cells.get_mpz_t()));
}

Integer pow_u64(uint64_t base, int e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(e));
    return r;
}

uint64_t parallel_sum_rows(uint64_t rows, int threads,
                           const std::function<uint64_t(uint64_t, uint64_t)>& block) {
    if (threads < 1) threads = 1;
    uint64_t nblocks = std::min<uint64_t>(static_cast<uint64_t>(threads), std::max<uint64_t>(rows, 1));
    if (nblocks <= 1) return block(0, rows);
    std::vector<uint64_t> partial(nblocks, 0);
    std::vector<std::exception_ptr> errs(nblocks);
    std::vector<std::thread> pool;
    for (uint64_t b = 0; b < nblocks; ++b) {
        uint64_t lo = rows * b / nblocks;
        uint64_t hi = rows * (b + 1) / nblocks;
        pool.emplace_back([&, b, lo, hi] {
            try {
                partial[b] = block(lo, hi);
            } catch (...) {
                errs[b] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    uint64_t total = 0;
    for (uint64_t v : partial) total += v;
    return total;
}

// ---- RootCounter ----

std::optional<uint64_t> RootCounter::subfield_index_of(const FieldElement& x) const {
    auto c = t_.subfield_coords(x, sub_.d);
    if (!c) return std::nullopt;
    uint64_t idx = 0;
    for (uint32_t v : *c) idx = idx * t_.p() + v;
    return idx;
}

const FieldElement& RootCounter::cached_inverse(const FieldElement& x) {
    auto it = inverses_.find(x.coords);
    if (it != inverses_.end()) return it->second;
    return inverses_.emplace(x.coords, t_.inverse(x)).first->second;
}

const std::vector<uint32_t>& RootCounter::preimage_counts(int e) {
    auto it = counts_.find(e);
    if (it != counts_.end()) return it->second;
    std::vector<uint32_t> c(sub_.size, 0);
    for (uint64_t i = 0; i < sub_.size; ++i) {
        FieldElement v = sub_.elem_fe(i);
        auto idx = subfield_index_of(t_.pow(v, static_cast<uint64_t>(e)));
        c[*idx]++;
    }
    return counts_.emplace(e, std::move(c)).first->second;
}

const std::vector<std::vector<uint32_t>>& RootCounter::preimage_lists(int e) {
    auto it = lists_.find(e);
    if (it != lists_.end()) return it->second;
    std::vector<std::vector<uint32_t>> l(sub_.size);
    for (uint64_t i = 0; i < sub_.size; ++i) {
        FieldElement v = sub_.elem_fe(i);
        auto idx = subfield_index_of(t_.pow(v, static_cast<uint64_t>(e)));
        l[*idx].push_back(static_cast<uint32_t>(i));
    }
    return lists_.emplace(e, std::move(l)).first->second;
}

uint64_t RootCounter::gcd_count(const std::vector<FieldElement>& coeffs, int deg,
                                BudgetMeter& budget) const {
    FPoly f = fp_make_monic(t_, FPoly(coeffs.begin(), coeffs.begin() + deg + 1));
    Integer S = t_.subfield_size(sub_.d);
    budget.charge(mpz_sizeinbase(S.get_mpz_t(), 2));
    // X^S mod f by square and multiply
    FPoly x{t_.zero(), t_.one()};
    FPoly r{t_.one()};
    size_t bits = mpz_sizeinbase(S.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = fp_mulmod(t_, r, r, f);
        if (mpz_tstbit(S.get_mpz_t(), i)) r = fp_mulmod(t_, r, x, f);
    }
    // gcd(X^S - X, f)
    if (r.size() < 2) r.resize(2, t_.zero());
    t_.sub(r[1], r[1], t_.one());
    fp_trim(r);
    FPoly g = fp_gcd(t_, f, std::move(r));
    return g.empty() ? 0 : g.size() - 1;
}

uint64_t RootCounter::count_distinct_roots(const std::vector<FieldElement>& coeffs,
                                           BudgetMeter& budget) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg >= 0 && coeffs[static_cast<size_t>(deg)].is_zero()) --deg;
    if (deg < 0) return sub_.size;  // zero polynomial
    if (deg == 0) return 0;
    if (deg == 1) return 1;
    const uint32_t p = t_.p();
    if (deg == 2 && p != 2) {
        // c2 x^2 + c1 x + c0: root count from the discriminant
        if (four_.coords.empty()) four_ = t_.from_residue(4);
        t_.mul(scr2_, coeffs[2], coeffs[0]);
        t_.mul(scr2_, scr2_, four_);
        if (coeffs[1].is_zero()) {
            t_.neg(scr1_, scr2_);
        } else {
            t_.mul(scr1_, coeffs[1], coeffs[1]);
            t_.sub(scr1_, scr1_, scr2_);
        }
        if (scr1_.is_zero()) return 1;
        uint64_t idx;
        if (t_.try_subfield_index(scr1_, sub_.d, idx)) return preimage_counts(2)[idx] ? 2 : 0;
        // coefficients outside the subfield: fall through to gcd
        return gcd_count(coeffs, deg, budget);
    }
    bool binomial = true;
    for (int j = 1; j < deg; ++j)
        if (!coeffs[static_cast<size_t>(j)].is_zero()) {
            binomial = false;
            break;
        }
    if (binomial && deg <= 16) {
        t_.mul(scr1_, coeffs[0], cached_inverse(coeffs[static_cast<size_t>(deg)]));
        t_.neg(scr1_, scr1_);
        uint64_t idx;
        if (t_.try_subfield_index(scr1_, sub_.d, idx)) return preimage_counts(deg)[idx];
    }
    return gcd_count(coeffs, deg, budget);
}

void RootCounter::find_roots(const std::vector<FieldElement>& coeffs, BudgetMeter& budget,
                             std::vector<FieldElement>& out) {
    out.clear();
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg >= 0 && coeffs[static_cast<size_t>(deg)].is_zero()) --deg;
    if (deg < 0) {
        budget.charge(sub_.size);
        for (uint64_t i = 0; i < sub_.size; ++i) out.push_back(sub_.elem_fe(i));
        return;
    }
    if (deg == 0) return;
    if (deg == 1) {
        t_.mul(scr1_, coeffs[0], cached_inverse(coeffs[1]));
        t_.neg(scr1_, scr1_);
        out.push_back(scr1_);
        return;
    }
    bool binomial = true;
    for (int j = 1; j < deg; ++j)
        if (!coeffs[static_cast<size_t>(j)].is_zero()) {
            binomial = false;
            break;
        }
    if (binomial && deg <= 16) {
        t_.mul(scr1_, coeffs[0], cached_inverse(coeffs[static_cast<size_t>(deg)]));
        t_.neg(scr1_, scr1_);
        uint64_t idx;
        if (t_.try_subfield_index(scr1_, sub_.d, idx)) {
            for (uint32_t i : preimage_lists(deg)[idx]) out.push_back(sub_.elem_fe(i));
            return;
        }
    }
    // full scan with Horner evaluation
    budget.charge(sub_.size);
    FieldElement v, x;
    for (uint64_t i = 0; i < sub_.size; ++i) {
        sub_.load(x, i);
        v = coeffs[static_cast<size_t>(deg)];
        for (int j = deg - 1; j >= 0; --j) {
            t_.mul(v, v, x);
            t_.add(v, v, coeffs[static_cast<size_t>(j)]);
        }
        if (v.is_zero()) out.push_back(x);
    }
}

// ---- chart enumeration ----

namespace {

// Preprocessed chart data shared by the counting strategies.
struct ChartPlan {
    int F = 0;                       // number of free positions
    std::vector<int> positions;      // absolute coordinate index per free slot
    bool constant_zero = true;       // sum of terms with no free variables
    FieldElement constant;
    // terms restricted to this chart, exponents per free slot
    struct PTerm {
        FieldElement coeff;
        std::vector<int> exps;  // length F
        int last_exp = 0;       // exponent at the final slot
    };
    std::vector<PTerm> terms;
    bool empty_equation = false;
};

ChartPlan make_plan(const FieldTower& t, int n, int i0, const std::vector<EmbTerm>& terms) {
    ChartPlan plan;
    plan.F = n - i0;
    for (int j = i0 + 1; j <= n; ++j) plan.positions.push_back(j);
    plan.constant = t.zero();
    plan.empty_equation = terms.empty();
    for (const auto& term : terms) {
        bool vanishes = false;
        for (int j = 0; j < i0; ++j)
            if (term.exps[j] > 0) {
                vanishes = true;
                break;
            }
        if (vanishes) continue;
        ChartPlan::PTerm pt;
        pt.coeff = term.coeff;
        bool has_free = false;
        for (int s = 0; s < plan.F; ++s) {
            int e = term.exps[plan.positions[s]];
            pt.exps.push_back(e);
            if (e) has_free = true;
        }
        if (!has_free) {
            t.add(plan.constant, plan.constant, pt.coeff);
            continue;
        }
        pt.last_exp = plan.F ? pt.exps[plan.F - 1] : 0;
        plan.terms.push_back(std::move(pt));
    }
    plan.constant_zero = plan.constant.is_zero();
    return plan;
}

// Power tables for one free slot: tab[e] has size * D entries holding
// (mult * v)^e over the value set {mult * v : v in subfield}.
struct SlotTables {
    std::map<int, std::vector<uint32_t>> pow;
};

std::vector<SlotTables> build_slot_tables(const FieldTower& t, const ChartPlan& plan,
                                          const SubfieldTable& sub,
                                          const std::vector<FieldElement>& mult) {
    const int D = t.ambient_degree();
    std::vector<SlotTables> slots(plan.F);
    for (int s = 0; s < plan.F; ++s) {
        std::vector<int> exps;
        for (const auto& pt : plan.terms)
            if (pt.exps[s]) exps.push_back(pt.exps[s]);
        std::sort(exps.begin(), exps.end());
        exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
        if (exps.empty()) continue;
        // base values mult * v
        const FieldElement* m = nullptr;
        if (!mult.empty()) {
            const FieldElement& cand = mult[plan.positions[s]];
            if (!(cand == t.one())) m = &cand;
        }
        std::vector<uint32_t> base(sub.size * D);
        FieldElement tmp, v;
        for (uint64_t i = 0; i < sub.size; ++i) {
            if (m) {
                v = sub.elem_fe(i);
                t.mul(tmp, *m, v);
                std::memcpy(base.data() + i * D, tmp.coords.data(), D * sizeof(uint32_t));
            } else {
                std::memcpy(base.data() + i * D, sub.elem(i), D * sizeof(uint32_t));
            }
        }
        for (int e : exps) {
            if (e == 1) continue;
            std::vector<uint32_t> tab(sub.size * D);
            FieldElement b, r;
            for (uint64_t i = 0; i < sub.size; ++i) {
                b.coords.assign(base.data() + i * D, base.data() + (i + 1) * D);
                r = t.pow(b, static_cast<uint64_t>(e));
                std::memcpy(tab.data() + i * D, r.coords.data(), D * sizeof(uint32_t));
            }
            slots[s].pow.emplace(e, std::move(tab));
        }
        slots[s].pow.emplace(1, std::move(base));
    }
    return slots;
}

// Recursive descent with per-term prefix products; the innermost slot is
// unrolled into a tight loop.
struct ChartRunner {
    const FieldTower& t;
    const ChartPlan& plan;
    const SubfieldTable& sub;
    const std::vector<SlotTables>& slots;
    int D;
    uint32_t p;

    // prefix[depth][term] flattened
    std::vector<uint32_t> prefix;
    size_t T = 0;

    explicit ChartRunner(const FieldTower& tw, const ChartPlan& pl, const SubfieldTable& sb,
                         const std::vector<SlotTables>& sl)
        : t(tw), plan(pl), sub(sb), slots(sl), D(tw.ambient_degree()), p(tw.p()) {
        T = plan.terms.size();
        prefix.assign((static_cast<size_t>(plan.F) + 1) * std::max<size_t>(T, 1) * D, 0);
        for (size_t ti = 0; ti < T; ++ti)
            std::memcpy(prow(0, ti), plan.terms[ti].coeff.coords.data(), D * sizeof(uint32_t));
    }

    uint32_t* prow(int depth, size_t ti) {
        return prefix.data() + (static_cast<size_t>(depth) * std::max<size_t>(T, 1) + ti) * D;
    }

    void descend_value(int depth, uint64_t idx) {
        // update prefixes for slot `depth` with value index idx
        for (size_t ti = 0; ti < T; ++ti) {
            int e = plan.terms[ti].exps[depth];
            const uint32_t* src = prow(depth, ti);
            uint32_t* dst = prow(depth + 1, ti);
            if (!e) {
                std::memcpy(dst, src, D * sizeof(uint32_t));
            } else {
                const auto& tab = slots[depth].pow.at(e);
                t.mul_into(dst, src, tab.data() + idx * D);
            }
        }
    }

    // counts solutions over the innermost slot for the current prefixes
    uint64_t run_inner(uint64_t lo, uint64_t hi) {
        const int s = plan.F - 1;
        // row constant: chart constant plus terms finished before the last slot
        std::array<uint32_t, kMaxD> rowc{};
        for (int j = 0; j < D; ++j) rowc[j] = plan.constant.coords[j];
        struct Live {
            const uint32_t* tab;
            const uint32_t* pref;
            bool unit;
        };
        std::vector<Live> live;
        for (size_t ti = 0; ti < T; ++ti) {
            int e = plan.terms[ti].exps[s];
            const uint32_t* pr = prow(s, ti);
            if (!e) {
                for (int j = 0; j < D; ++j) {
                    rowc[j] += pr[j];
                    if (rowc[j] >= p) rowc[j] -= p;
                }
            } else {
                const auto& tab = slots[s].pow.at(e);
                bool unit = true;
                for (int j = 0; j < D; ++j)
                    if (pr[j] != (j == 0 ? 1u : 0u)) {
                        unit = false;
                        break;
                    }
                live.push_back(Live{tab.data(), pr, unit});
            }
        }
        uint64_t cnt = 0;
        std::array<uint32_t, kMaxD> acc;
        std::array<uint32_t, kMaxD> tmp;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            std::memcpy(acc.data(), rowc.data(), D * sizeof(uint32_t));
            for (const auto& lt : live) {
                const uint32_t* tv = lt.tab + idx * D;
                if (lt.unit) {
                    for (int j = 0; j < D; ++j) {
                        acc[j] += tv[j];
                        if (acc[j] >= p) acc[j] -= p;
                    }
                } else {
                    t.mul_into(tmp.data(), lt.pref, tv);
                    for (int j = 0; j < D; ++j) {
                        acc[j] += tmp[j];
                        if (acc[j] >= p) acc[j] -= p;
                    }
                }
            }
            bool zero = true;
            for (int j = 0; j < D; ++j)
                if (acc[j]) {
                    zero = false;
                    break;
                }
            cnt += zero;
        }
        return cnt;
    }

    uint64_t run(int depth, uint64_t lo, uint64_t hi) {
        if (plan.F == 0) return plan.empty_equation || plan.constant_zero ? 1 : 0;
        if (depth == plan.F - 1) return run_inner(lo, hi);
        uint64_t cnt = 0;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            descend_value(depth, idx);
            cnt += run(depth + 1, 0, sub.size);
        }
        return cnt;
    }
};

}  // namespace

uint64_t count_on_chart(const FieldTower& t, int n, int i0, const SubfieldTable& sub,
                        const std::vector<FieldElement>& mult, const std::vector<EmbTerm>& terms,
                        BudgetMeter& budget, int threads) {
    ChartPlan plan = make_plan(t, n, i0, terms);
    charge_cells(budget, plan.F ? pow_u64(sub.size, plan.F) : Integer(1));
    auto slots = build_slot_tables(t, plan, sub, mult);
    if (plan.F == 0) {
        ChartRunner r(t, plan, sub, slots);
        return r.run(0, 0, 1);
    }
    uint64_t rows = sub.size;
    return parallel_sum_rows(rows, threads, [&](uint64_t lo, uint64_t hi) {
        ChartRunner r(t, plan, sub, slots);
        if (plan.F == 1) return r.run(0, lo, hi);
        uint64_t cnt = 0;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            r.descend_value(0, idx);
            cnt += r.run(1, 0, sub.size);
        }
        return cnt;
    });
}

uint64_t count_roots_on_chart(const FieldTower& t, int n, int i0, const SubfieldTable& sub,
                              const std::vector<EmbTerm>& terms, RootCounter& rc,
                              BudgetMeter& budget, int threads) {
    ChartPlan plan = make_plan(t, n, i0, terms);
    if (plan.F == 0) {
        charge_cells(budget, Integer(1));
        return plan.empty_equation || plan.constant_zero ? 1 : 0;
    }
    charge_cells(budget, pow_u64(sub.size, plan.F - 1));
    auto slots = build_slot_tables(t, plan, sub, std::vector<FieldElement>{});
    int maxdeg = 0;
    for (const auto& pt : plan.terms) maxdeg = std::max(maxdeg, pt.last_exp);

    // single univariate cell: no outer rows to split
    if (plan.F == 1) threads = 1;
    uint64_t rows = plan.F == 1 ? 1 : sub.size;
    return parallel_sum_rows(rows, threads, [&](uint64_t lo, uint64_t hi) {
        ChartRunner cr(t, plan, sub, slots);
        // per-block counter so the lazy preimage tables stay unshared
        RootCounter local_rc(t, sub);
        RootCounter& rcr = rows == 1 ? rc : local_rc;
        std::vector<FieldElement> ucoef(static_cast<size_t>(maxdeg) + 1, t.zero());
        uint64_t total = 0;
        FieldElement pr;
        std::function<void(int)> rec = [&](int depth) {
            if (depth == plan.F - 1) {
                for (auto& c : ucoef) std::fill(c.coords.begin(), c.coords.end(), 0u);
                t.add(ucoef[0], ucoef[0], plan.constant);
                for (size_t ti = 0; ti < cr.T; ++ti) {
                    pr.coords.assign(cr.prow(depth, ti), cr.prow(depth, ti) + cr.D);
                    int e = plan.terms[ti].last_exp;
                    t.add(ucoef[e], ucoef[e], pr);
                }
                total += rcr.count_distinct_roots(ucoef, budget);
                return;
            }
            uint64_t b = depth == 0 ? lo : 0;
            uint64_t e = depth == 0 ? hi : sub.size;
            for (uint64_t idx = b; idx < e; ++idx) {
                cr.descend_value(depth, idx);
                rec(depth + 1);
            }
        };
        if (plan.F == 1) {
            if (lo == 0) rec(0);
        } else {
            rec(0);
        }
        return total;
    });
}

void for_each_univariate_system(
    const FieldTower& t, int n, int i0, const SubfieldTable& sub,
    const std::vector<const std::vector<EmbTerm>*>& polys, BudgetMeter& budget,
    const std::function<bool(const std::vector<FieldElement>&,
                             const std::vector<FieldElement>&)>& filter,
    const std::function<void(const std::vector<FieldElement>&,
                             const std::vector<std::vector<FieldElement>>&)>& fn) {
    if (i0 >= n) throw validation_error("univariate enumeration needs a free last coordinate");
    if (polys.empty()) throw validation_error("no polynomials given");
    const size_t P = polys.size();
    std::vector<ChartPlan> plans;
    std::vector<std::vector<SlotTables>> slots;
    std::vector<ChartRunner> runners;
    plans.reserve(P);
    for (size_t pi = 0; pi < P; ++pi) plans.push_back(make_plan(t, n, i0, *polys[pi]));
    for (size_t pi = 0; pi < P; ++pi)
        slots.push_back(build_slot_tables(t, plans[pi], sub, std::vector<FieldElement>{}));
    runners.reserve(P);
    for (size_t pi = 0; pi < P; ++pi) runners.emplace_back(t, plans[pi], sub, slots[pi]);
    const int F = plans[0].F;
    charge_cells(budget, pow_u64(sub.size, F - 1));

    std::vector<FieldElement> coords(static_cast<size_t>(n) + 1, t.zero());
    coords[i0] = t.one();
    std::vector<std::vector<FieldElement>> ucoefs(P);
    for (size_t pi = 0; pi < P; ++pi) {
        int maxdeg = 0;
        for (const auto& pt : plans[pi].terms) maxdeg = std::max(maxdeg, pt.last_exp);
        ucoefs[pi].assign(static_cast<size_t>(maxdeg) + 1, t.zero());
    }
    FieldElement pr;
    auto assemble = [&](size_t pi, int depth) {
        auto& u = ucoefs[pi];
        for (auto& c : u) std::fill(c.coords.begin(), c.coords.end(), 0u);
        t.add(u[0], u[0], plans[pi].constant);
        ChartRunner& cr = runners[pi];
        for (size_t ti = 0; ti < cr.T; ++ti) {
            pr.coords.assign(cr.prow(depth, ti), cr.prow(depth, ti) + cr.D);
            t.add(u[plans[pi].terms[ti].last_exp], u[plans[pi].terms[ti].last_exp], pr);
        }
    };
    // the leaf-level descent of polynomials 1.. runs only for cells that
    // survive the filter on polynomial 0
    std::function<void(int)> rec = [&](int depth) {
        if (depth == F - 1) {
            // F == 1: no outer slots at all, prefixes are the raw terms
            assemble(0, depth);
            if (!filter(coords, ucoefs[0])) return;
            for (size_t pi = 1; pi < P; ++pi) assemble(pi, depth);
            fn(coords, ucoefs);
            return;
        }
        int pos = plans[0].positions[depth];
        const bool leaf_level = depth == F - 2;
        for (uint64_t idx = 0; idx < sub.size; ++idx) {
            sub.load(coords[pos], idx);
            if (leaf_level) {
                runners[0].descend_value(depth, idx);
                assemble(0, depth + 1);
                if (!filter(coords, ucoefs[0])) continue;
                for (size_t pi = 1; pi < P; ++pi) {
                    runners[pi].descend_value(depth, idx);
                    assemble(pi, depth + 1);
                }
                fn(coords, ucoefs);
            } else {
                for (auto& cr : runners) cr.descend_value(depth, idx);
                rec(depth + 1);
            }
        }
    };
    rec(0);
}

void for_each_univariate(const FieldTower& t, int n, int i0, const SubfieldTable& sub,
                         const std::vector<EmbTerm>& terms, BudgetMeter& budget,
                         const std::function<void(const std::vector<FieldElement>&,
                                                  const std::vector<FieldElement>&)>& fn) {
    for_each_univariate_system(
        t, n, i0, sub, {&terms}, budget,
        [&](const std::vector<FieldElement>& coords, const std::vector<FieldElement>& u0) {
            fn(coords, u0);
            return false;
        },
        [](const std::vector<FieldElement>&, const std::vector<std::vector<FieldElement>>&) {});
}

void visit_points(const FieldTower& t, int n, const SubfieldTable& sub,
                  const std::vector<EmbTerm>& terms, BudgetMeter& budget,
                  const std::function<void(const std::vector<FieldElement>&)>& fn) {
    std::vector<FieldElement> coords(static_cast<size_t>(n) + 1, t.zero());
    for (int i0 = 0; i0 <= n; ++i0) {
        ChartPlan plan = make_plan(t, n, i0, terms);
        charge_cells(budget, plan.F ? pow_u64(sub.size, plan.F) : Integer(1));
        for (int j = 0; j < i0; ++j) coords[j] = t.zero();
        coords[i0] = t.one();
        std::function<void(int)> rec = [&](int depth) {
            if (depth == plan.F) {
                if (!plan.empty_equation) {
                    if (!evaluate_terms(t, terms, coords).is_zero()) return;
                }
                fn(coords);
                return;
            }
            int pos = plan.positions[depth];
            for (uint64_t idx = 0; idx < sub.size; ++idx) {
                sub.load(coords[pos], idx);
                rec(depth + 1);
            }
        };
        rec(0);
    }
}

uint64_t count_points_where(const FieldTower& t, int n, const SubfieldTable& sub,
                            const std::vector<EmbTerm>& terms, BudgetMeter& budget, int threads,
                            const std::function<bool(const std::vector<FieldElement>&)>& pred) {
    uint64_t total = 0;
    for (int i0 = 0; i0 <= n; ++i0) {
        ChartPlan plan = make_plan(t, n, i0, terms);
        charge_cells(budget, plan.F ? pow_u64(sub.size, plan.F) : Integer(1));
        uint64_t rows = plan.F ? sub.size : 1;
        total += parallel_sum_rows(rows, threads, [&](uint64_t lo, uint64_t hi) {
            std::vector<FieldElement> coords(static_cast<size_t>(n) + 1, t.zero());
            for (int j = 0; j < i0; ++j) coords[j] = t.zero();
            coords[i0] = t.one();
            uint64_t cnt = 0;
            std::function<void(int)> rec = [&](int depth) {
                if (depth == plan.F) {
                    if (!plan.empty_equation && !evaluate_terms(t, terms, coords).is_zero()) return;
                    if (pred(coords)) ++cnt;
                    return;
                }
                int pos = plan.positions[depth];
                uint64_t b = depth == 0 ? lo : 0;
                uint64_t e = depth == 0 ? hi : sub.size;
                for (uint64_t idx = b; idx < e; ++idx) {
                    sub.load(coords[pos], idx);
                    rec(depth + 1);
                }
            };
            if (plan.F == 0) {
                if (lo == 0) rec(0);
            } else {
                rec(0);
            }
            return cnt;
        });
    }
    return total;
}

}  // namespace mirrorcount::detail
