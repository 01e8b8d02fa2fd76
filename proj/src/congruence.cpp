#include "mirrorcount/congruence.hpp"

#include <numeric>

namespace mirrorcount {

OrdQ OrdQ::plus(const OrdQ& o) const {
    if (infinite_ || o.infinite_) return infinity();
    long num = num_ * o.den_ + o.num_ * den_;
    return finite(num, den_ * o.den_);
}

std::string OrdQ::str() const {
    if (infinite_) return "inf";
    long g = std::gcd(num_ < 0 ? -num_ : num_, static_cast<long>(den_));
    if (g == 0) g = 1;
    long n = num_ / g;
    long d = den_ / g;
    if (d == 1) return std::to_string(n);
    return std::to_string(n) + "/" + std::to_string(d);
}

OrdQ ord_q(const Integer& x, QDescriptor q) {
    if (x == 0) return OrdQ::infinity();
    Integer tmp;
    Integer p(static_cast<unsigned long>(q.p));
    mp_bitcnt_t v = mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return OrdQ::finite(static_cast<long>(v), q.a);
}

CongruenceReport verify_congruence(const CountSequence& seq_x, const CountSequence& seq_quotient,
                                   CongruenceMode mode, const Integer& group_order) {
    if (!(seq_x.q == seq_quotient.q))
        throw validation_error("count sequences live over different base fields");
    if (seq_x.length() != seq_quotient.length())
        throw validation_error("count sequences cover different k ranges");
    if (group_order < 1) throw validation_error("group order must be positive");

    CongruenceReport rep;
    rep.q = seq_x.q;
    rep.mode = mode;
    rep.group_order = group_order;
    rep.c = ord_q(group_order, seq_x.q);
    rep.all_pass = true;

    // weak bound threshold k - c as an exact comparison:
    // ord >= k - c  <=>  ord + c >= k
    for (int k = 1; k <= seq_x.length(); ++k) {
        CongruenceRow row;
        row.k = k;
        row.count_x = seq_x.at_k(k);
        row.count_quotient = seq_quotient.at_k(k);
        row.difference = row.count_x - row.count_quotient;
        row.ord_difference = ord_q(row.difference, rep.q);
        row.pass = row.ord_difference >= k;
        row.pass_weak = row.ord_difference.plus(rep.c) >= k;
        if (mode == CongruenceMode::unit) {
            row.ord_x_minus_one = ord_q(row.count_x - 1, rep.q);
            row.ord_quotient_minus_one = ord_q(row.count_quotient - 1, rep.q);
            row.pass_unit = (*row.ord_x_minus_one >= k) && (*row.ord_quotient_minus_one >= k);
            if (!*row.pass_unit) rep.all_pass = false;
        }
        if (!row.pass) rep.all_pass = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace mirrorcount
