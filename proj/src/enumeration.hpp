// Private enumeration machinery shared by the counting and group-action
// translation units. Not installed.
#pragma once

#include <array>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "mirrorcount/counting.hpp"
#include "mirrorcount/ff.hpp"

namespace mirrorcount::detail {

inline constexpr int kMaxD = 128;

/// Materialized subfield F_{p^d} in enumeration order.
struct SubfieldTable {
    const FieldTower* t = nullptr;
    int d = 0;
    int D = 0;
    uint64_t size = 0;
    std::vector<uint32_t> flat;  // size * D coordinates

    static SubfieldTable build(const FieldTower& tw, int deg, uint64_t limit = 1u << 24) {
        Integer s = tw.subfield_size(deg);
        if (!s.fits_ulong_p() || mpz_get_ui(s.get_mpz_t()) > limit)
            throw budget_error(limit + 1, limit);
        SubfieldTable sub;
        sub.t = &tw;
        sub.d = deg;
        sub.D = tw.ambient_degree();
        sub.size = mpz_get_ui(s.get_mpz_t());
        sub.flat.resize(sub.size * sub.D);
        for (uint64_t i = 0; i < sub.size; ++i) {
            FieldElement e = tw.subfield_element(deg, i);
            std::memcpy(sub.flat.data() + i * sub.D, e.coords.data(), sub.D * sizeof(uint32_t));
        }
        return sub;
    }

    const uint32_t* elem(uint64_t i) const { return flat.data() + i * D; }
    FieldElement elem_fe(uint64_t i) const {
        FieldElement e;
        e.coords.assign(elem(i), elem(i) + D);
        return e;
    }
    // in-place variant for hot loops (reuses the vector's capacity)
    void load(FieldElement& out, uint64_t i) const { out.coords.assign(elem(i), elem(i) + D); }
};

/// A term with its coefficient embedded into the ambient field.
struct EmbTerm {
    FieldElement coeff;
    std::vector<int> exps;
};

std::vector<EmbTerm> embed_terms(const FieldTower& t, const Hypersurface& X);
std::vector<std::vector<EmbTerm>> partial_derivative_terms(const FieldTower& t,
                                                           const Hypersurface& X);

/// Evaluates a sparse term list at full coordinates.
FieldElement evaluate_terms(const FieldTower& t, const std::vector<EmbTerm>& terms,
                            const std::vector<FieldElement>& coords);

void charge_cells(BudgetMeter& budget, const Integer& cells);
Integer pow_u64(uint64_t base, int e);

/// Splits [0, rows) into contiguous blocks, sums block results in block
/// order. Exceptions from workers are rethrown.
uint64_t parallel_sum_rows(uint64_t rows, int threads,
                           const std::function<uint64_t(uint64_t, uint64_t)>& block);

/// Exact root counting/finding for univariate polynomials with
/// coefficients in the size-p^d subfield of the tower. Binomials and
/// odd-characteristic quadratics use precomputed power-preimage tables;
/// anything else falls back to gcd with X^S - X (count) or a full scan
/// (find).
class RootCounter {
public:
    RootCounter(const FieldTower& t, const SubfieldTable& sub) : t_(t), sub_(sub) {}

    /// Number of distinct roots in the subfield; the zero polynomial has
    /// every element as a root.
    uint64_t count_distinct_roots(const std::vector<FieldElement>& coeffs, BudgetMeter& budget);
    /// All roots in the subfield, in enumeration order. Reuses out's
    /// capacity between calls.
    void find_roots(const std::vector<FieldElement>& coeffs, BudgetMeter& budget,
                    std::vector<FieldElement>& out);
    std::vector<FieldElement> find_roots(const std::vector<FieldElement>& coeffs,
                                         BudgetMeter& budget) {
        std::vector<FieldElement> out;
        find_roots(coeffs, budget, out);
        return out;
    }

private:
    const std::vector<uint32_t>& preimage_counts(int e);
    const std::vector<std::vector<uint32_t>>& preimage_lists(int e);
    std::optional<uint64_t> subfield_index_of(const FieldElement& x) const;
    uint64_t gcd_count(const std::vector<FieldElement>& coeffs, int deg, BudgetMeter& budget) const;
    const FieldElement& cached_inverse(const FieldElement& x);

    const FieldTower& t_;
    const SubfieldTable& sub_;
    std::map<int, std::vector<uint32_t>> counts_;               // e -> per-index #preimages of x^e
    std::map<int, std::vector<std::vector<uint32_t>>> lists_;   // e -> per-index preimage indices
    std::map<std::vector<uint32_t>, FieldElement> inverses_;    // leading coefficients recur
    FieldElement four_, scr1_, scr2_;                           // hot-path scratch
};

/// Per-chart representative counting. Chart i0 fixes x_j = 0 for j < i0,
/// x_{i0} = 1; free coordinates run over mult[j] * S where S is the
/// subfield (mult defaults to 1, and mult[j] * 0 = 0 keeps zero in every
/// value set). Counts cells where the term sum vanishes; with an empty
/// term list every cell counts.
uint64_t count_on_chart(const FieldTower& t, int n, int i0, const SubfieldTable& sub,
                        const std::vector<FieldElement>& mult, const std::vector<EmbTerm>& terms,
                        BudgetMeter& budget, int threads);

/// Same chart, last-coordinate-roots strategy: enumerates all free
/// coordinates except the last and counts roots of the induced
/// univariate polynomial.
uint64_t count_roots_on_chart(const FieldTower& t, int n, int i0, const SubfieldTable& sub,
                              const std::vector<EmbTerm>& terms, RootCounter& rc,
                              BudgetMeter& budget, int threads);

/// Enumerates the outer cells of chart i0 (all free slots except the
/// last coordinate x_n), assembling one univariate polynomial in x_n per
/// input term list in the same synchronized descent. Per cell, `filter`
/// sees the first polynomial's univariate; only when it returns true are
/// the remaining univariates materialized and handed to fn. coords holds
/// the full point with x_n still zero; each ucoefs entry is
/// constant-term-first. Requires i0 < n.
void for_each_univariate_system(
    const FieldTower& t, int n, int i0, const SubfieldTable& sub,
    const std::vector<const std::vector<EmbTerm>*>& polys, BudgetMeter& budget,
    const std::function<bool(const std::vector<FieldElement>&,
                             const std::vector<FieldElement>&)>& filter,
    const std::function<void(const std::vector<FieldElement>&,
                             const std::vector<std::vector<FieldElement>>&)>& fn);

void for_each_univariate(const FieldTower& t, int n, int i0, const SubfieldTable& sub,
                         const std::vector<EmbTerm>& terms, BudgetMeter& budget,
                         const std::function<void(const std::vector<FieldElement>&,
                                                  const std::vector<FieldElement>&)>& fn);

/// Visits every representative on the variety (all of P^n when terms is
/// empty) with full coordinates. Single-threaded, deterministic order.
void visit_points(const FieldTower& t, int n, const SubfieldTable& sub,
                  const std::vector<EmbTerm>& terms, BudgetMeter& budget,
                  const std::function<void(const std::vector<FieldElement>&)>& fn);

/// Parallel count of variety representatives satisfying a point
/// predicate (thread-safe, pure).
uint64_t count_points_where(const FieldTower& t, int n, const SubfieldTable& sub,
                            const std::vector<EmbTerm>& terms, BudgetMeter& budget, int threads,
                            const std::function<bool(const std::vector<FieldElement>&)>& pred);

}  // namespace mirrorcount::detail
