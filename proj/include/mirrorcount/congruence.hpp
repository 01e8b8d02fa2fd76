#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mirrorcount/counting.hpp"
#include "mirrorcount/types.hpp"

namespace mirrorcount {

/// Exact q-adic valuation ord_q(x) = ord_p(x)/a, with a +infinity
/// sentinel for x = 0 that compares greater than every finite value.
class OrdQ {
public:
    static OrdQ infinity() {
        OrdQ v;
        v.infinite_ = true;
        return v;
    }
    static OrdQ finite(long ord_p, int a) {
        OrdQ v;
        v.num_ = ord_p;
        v.den_ = a;
        return v;
    }

    bool is_infinite() const { return infinite_; }
    long ord_p() const { return num_; }
    int den() const { return den_; }

    bool operator>=(long k) const { return infinite_ || num_ >= k * den_; }
    bool geq(const OrdQ& o) const {
        if (infinite_) return true;
        if (o.infinite_) return false;
        return static_cast<long long>(num_) * o.den_ >= static_cast<long long>(o.num_) * den_;
    }
    bool operator==(const OrdQ& o) const {
        if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
        return static_cast<long long>(num_) * o.den_ == static_cast<long long>(o.num_) * den_;
    }
    OrdQ plus(const OrdQ& o) const;
    static OrdQ min(const OrdQ& x, const OrdQ& y) { return x.geq(y) ? y : x; }

    /// "inf", or the reduced fraction ("2", "3/2").
    std::string str() const;

private:
    bool infinite_ = false;
    long num_ = 0;
    int den_ = 1;
};

/// ord_q of a (possibly negative) integer; ord_q(0) is the sentinel.
OrdQ ord_q(const Integer& x, QDescriptor q);

/// Exact counts N_k for k = 1..L over one base field.
struct CountSequence {
    QDescriptor q;
    std::vector<Integer> values;

    int length() const { return static_cast<int>(values.size()); }
    const Integer& at_k(int k) const { return values.at(static_cast<size_t>(k) - 1); }
};

enum class CongruenceMode { quotient, unit };

struct CongruenceRow {
    int k = 1;
    Integer count_x;
    Integer count_quotient;
    Integer difference;
    OrdQ ord_difference = OrdQ::infinity();
    bool pass = false;       // ord_q(difference) >= k
    bool pass_weak = false;  // ord_q(difference) >= k - c (diagnostic bound)
    // unit-congruence extras (unit mode only)
    std::optional<OrdQ> ord_x_minus_one;
    std::optional<OrdQ> ord_quotient_minus_one;
    std::optional<bool> pass_unit;
};

struct CongruenceReport {
    QDescriptor q;
    CongruenceMode mode = CongruenceMode::quotient;
    Integer group_order = 1;
    OrdQ c = OrdQ::finite(0, 1);  // ord_q(#G)
    std::vector<CongruenceRow> rows;
    bool all_pass = false;
};

/// Per-k congruence verdicts on two count sequences over the same field.
/// quotient mode checks ord_q(N_k(X) - N_k(X/G)) >= k (zero difference
/// passes) and reports the weaker >= k - c bound; unit mode additionally
/// checks ord_q(N_k - 1) >= k on both sequences.
CongruenceReport verify_congruence(const CountSequence& seq_x, const CountSequence& seq_quotient,
                                   CongruenceMode mode, const Integer& group_order);

}  // namespace mirrorcount
