#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "mirrorcount/ff.hpp"
#include "mirrorcount/hypersurface.hpp"
#include "mirrorcount/types.hpp"

namespace mirrorcount {

enum class CountStrategy { naive, last_coordinate_roots };

enum class Provenance {
    naive_enumeration,
    last_coordinate_roots,
    twisted_chart,
    burnside,
    orbit_oracle,
    closed_form,
};

std::string provenance_name(Provenance p);
std::string strategy_name(CountStrategy s);

/// An exact point count together with where it came from.
struct CountRecord {
    int k = 1;
    Integer value;
    Provenance provenance = Provenance::naive_enumeration;
};

inline constexpr uint64_t kDefaultCellBudget = 1'000'000'000ull;

/// Budget accounting in chart cells (polynomial evaluations). Shared by
/// every enumeration of one experiment; exceeding the limit throws.
class BudgetMeter {
public:
    explicit BudgetMeter(uint64_t limit = kDefaultCellBudget) : limit_(limit) {}
    void charge(uint64_t cells) {
        uint64_t now = used_.fetch_add(cells, std::memory_order_relaxed) + cells;
        if (now > limit_) throw budget_error(now, limit_);
    }
    uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    uint64_t limit() const { return limit_; }

private:
    uint64_t limit_;
    std::atomic<uint64_t> used_{0};
};

/// N_k = #X(F_{q^k}), counting projective representatives whose first
/// nonzero coordinate is 1. The naive strategy evaluates the equation at
/// every representative; last_coordinate_roots enumerates all free
/// coordinates but the last one and counts roots of the resulting
/// univariate polynomial in F_{q^k}. The two must always agree.
CountRecord count_points(const FieldTower& t, const Hypersurface& X, int k, CountStrategy strategy,
                         BudgetMeter& budget, int threads = 1);

/// #P^n(F_{q^k}) = (q^(k(n+1)) - 1)/(q^k - 1), exact closed form.
Integer projective_space_count(QDescriptor q, int n, int k);

/// The same baseline through the chart enumerator with the equation test
/// disabled; for cross-checking the closed form at small sizes.
CountRecord projective_space_count_enumerated(const FieldTower& t, int n, int k,
                                              BudgetMeter& budget, int threads = 1);

/// A singular point found by exhaustive search, reported by the degree
/// of the searched extension.
struct SingularWitness {
    int extension_degree = 1;
    std::vector<FieldElement> point;  // n+1 normalized coordinates
};

struct SingularSearchResult {
    std::vector<SingularWitness> witnesses;  // deduplicated, capped
    bool truncated = false;
    bool found() const { return !witnesses.empty(); }
};

/// Scans P^n(F_{q^e}) for e = 1..search_degree for points where the
/// defining polynomial and all n+1 partial derivatives vanish. An empty
/// result means no singular point exists up to that degree. The search
/// enumerates all but one free coordinate and solves the remaining
/// partial derivative as a univariate polynomial, so the cost is about
/// q^(e(n-1)) cells per degree.
SingularSearchResult jacobian_singular_oracle(const FieldTower& t, const Hypersurface& X,
                                              int search_degree, BudgetMeter& budget);

}  // namespace mirrorcount
