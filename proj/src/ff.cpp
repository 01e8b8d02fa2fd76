#include "mirrorcount/ff.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace mirrorcount {

namespace {

constexpr int kMaxAmbientDegree = 128;
constexpr uint32_t kMaxPrime = 1u << 15;

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

uint32_t inv_mod_p(uint32_t x, uint32_t p) {
    return static_cast<uint32_t>(powmod_u64(x, p - 2, p));
}

// ---- dense F_p[x] helpers (constant term first), used for the modulus
// search and Frobenius tables ----

using Poly = std::vector<uint32_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly mul(const Poly& x, const Poly& y, uint32_t p) {
    if (x.empty() || y.empty()) return {};
    Poly r(x.size() + y.size() - 1, 0);
    std::vector<uint64_t> acc(r.size(), 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        for (size_t j = 0; j < y.size(); ++j) acc[i + j] += uint64_t(x[i]) * y[j];
    }
    for (size_t i = 0; i < r.size(); ++i) r[i] = static_cast<uint32_t>(acc[i] % p);
    trim(r);
    return r;
}

// remainder mod a monic f
Poly rem(Poly x, const Poly& f, uint32_t p) {
    int df = degree(f);
    while (degree(x) >= df) {
        uint32_t c = x.back();
        int shift = degree(x) - df;
        if (c) {
            for (int j = 0; j <= df; ++j) {
                uint64_t v = uint64_t(c) * f[j] % p;
                uint32_t& t = x[shift + j];
                t = static_cast<uint32_t>((t + p - v) % p);
            }
        }
        x.pop_back();
        trim(x);
    }
    return x;
}

Poly mulmod(const Poly& x, const Poly& y, const Poly& f, uint32_t p) {
    return rem(mul(x, y, p), f, p);
}

Poly powmod(Poly b, uint64_t e, const Poly& f, uint32_t p) {
    Poly r{1};
    b = rem(std::move(b), f, p);
    while (e) {
        if (e & 1) r = mulmod(r, b, f, p);
        b = mulmod(b, b, f, p);
        e >>= 1;
    }
    return r;
}

Poly sub(Poly x, const Poly& y, uint32_t p) {
    if (x.size() < y.size()) x.resize(y.size(), 0);
    for (size_t i = 0; i < y.size(); ++i) x[i] = (x[i] + p - y[i]) % p;
    trim(x);
    return x;
}

Poly make_monic(Poly f, uint32_t p) {
    if (f.empty()) return f;
    uint32_t inv = inv_mod_p(f.back(), p);
    for (auto& c : f) c = static_cast<uint32_t>(uint64_t(c) * inv % p);
    return f;
}

Poly poly_gcd(Poly x, Poly y, uint32_t p) {
    while (!y.empty()) {
        Poly r = rem(std::move(x), make_monic(y, p), p);
        x = y;
        y = std::move(r);
    }
    return make_monic(std::move(x), p);
}

std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Rabin irreducibility test for a monic polynomial of degree D over F_p.
bool is_irreducible(const Poly& f, uint32_t p) {
    int D = degree(f);
    if (D < 1) return false;
    if (D == 1) return true;
    // chain t_i = x^(p^i) mod f
    Poly x{0, 1};
    Poly t = x;
    auto primes = distinct_prime_factors(static_cast<uint64_t>(D));
    std::vector<int> checkpoints;
    for (uint64_t ell : primes) checkpoints.push_back(D / static_cast<int>(ell));
    std::sort(checkpoints.begin(), checkpoints.end());
    size_t next = 0;
    for (int i = 1; i <= D; ++i) {
        t = powmod(t, p, f, p);
        while (next < checkpoints.size() && checkpoints[next] == i) {
            Poly g = poly_gcd(sub(t, x, p), f, p);
            if (degree(g) != 0) return false;
            ++next;
        }
    }
    return t == x;
}

// Lexicographically smallest monic irreducible of degree D over F_p,
// comparing coefficient vectors from the constant term upward.
Poly smallest_irreducible(int D, uint32_t p) {
    if (D == 1) return Poly{0, 1};  // x itself
    std::vector<uint32_t> c(static_cast<size_t>(D), 0);
    c[0] = 1;  // constant term 0 would make the polynomial divisible by x
    for (;;) {
        Poly f(c);
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
        int i = D - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) throw internal_consistency_error("irreducible search exhausted");
        ++c[i];
    }
}

// Reduced row echelon form over F_p; returns pivot columns per row.
std::vector<int> rref(std::vector<std::vector<uint32_t>>& rows, uint32_t p) {
    std::vector<int> pivots;
    size_t r = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        uint32_t inv = inv_mod_p(rows[r][c], p);
        for (auto& v : rows[r]) v = static_cast<uint32_t>(uint64_t(v) * inv % p);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            uint32_t m = rows[i][c];
            for (size_t j = 0; j < cols; ++j)
                rows[i][j] = static_cast<uint32_t>((rows[i][j] + uint64_t(p - m) * rows[r][j]) % p);
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

uint64_t fnv1a(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ull) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= b[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

uint64_t hash_value(const FieldElement& x) {
    return fnv1a(x.coords.data(), x.coords.size() * sizeof(uint32_t));
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldTower build_tower(uint32_t p, int a, const std::set<int>& degrees_needed,
                       int degree_budget) {
    if (!is_prime_u64(p)) throw validation_error("p = " + std::to_string(p) + " is not prime");
    if (p > kMaxPrime) throw validation_error("p exceeds the supported prime bound");
    if (a < 1) throw validation_error("a must be positive");
    if (degrees_needed.empty()) throw validation_error("degrees_needed must be nonempty");
    long long l = 1;
    for (int d : degrees_needed) {
        if (d < 1) throw validation_error("extension degrees must be positive");
        l = std::lcm(l, static_cast<long long>(d));
        if (l * a > kMaxAmbientDegree) throw degree_budget_error(static_cast<int>(l * a), degree_budget);
    }
    int D = static_cast<int>(l) * a;
    if (D > degree_budget) throw degree_budget_error(D, degree_budget);

    FieldTower t;
    t.p_ = p;
    t.a_ = a;
    t.D_ = D;
    t.modulus_ = smallest_irreducible(D, p);
    t.build_internal();
    return t;
}

void FieldTower::build_internal() {
    const int D = D_;
    const uint32_t p = p_;

    // rows x^(D+e) mod f for e = 0..D-2
    reduction_.assign(static_cast<size_t>(std::max(0, D - 1)) * D, 0);
    std::vector<uint32_t> cur(D);
    for (int j = 0; j < D; ++j) cur[j] = (p - modulus_[j] % p) % p;  // x^D mod f
    for (int e = 0; e + 1 < D; ++e) {
        std::copy(cur.begin(), cur.end(), reduction_.begin() + static_cast<size_t>(e) * D);
        // multiply by x and reduce
        uint32_t top = cur[D - 1];
        for (int j = D - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top) {
            for (int j = 0; j < D; ++j) {
                uint64_t v = uint64_t(top) * ((p - modulus_[j] % p) % p);
                cur[j] = static_cast<uint32_t>((cur[j] + v) % p);
            }
        }
    }

    // Frobenius power matrices, column-major: frob_[e-1] is x -> x^(p^e)
    frob_.resize(D);
    Poly te{0, 1};
    for (int e = 1; e <= D; ++e) {
        te = powmod(te, p, modulus_, p);
        auto& m = frob_[e - 1];
        m.assign(static_cast<size_t>(D) * D, 0);
        Poly col{1};
        for (int j = 0; j < D; ++j) {
            for (int i = 0; i <= degree(col); ++i) m[static_cast<size_t>(j) * D + i] = col[i];
            if (j + 1 < D) col = mulmod(col, te, modulus_, p);
        }
    }

    // subfield bases for every divisor d of D, by kernel extraction of
    // the F_p-linear map x -> x^(p^d) - x
    for (int d = 1; d <= D; ++d) {
        if (D % d) continue;
        degrees_.push_back(d);
        const auto& m = frob_[d - 1];
        std::vector<std::vector<uint32_t>> rows(D, std::vector<uint32_t>(D, 0));
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                uint32_t v = m[static_cast<size_t>(j) * D + i];
                if (i == j) v = (v + p - 1) % p;
                rows[i][j] = v;
            }
        auto pivots = rref(rows, p);
        std::vector<bool> is_pivot(D, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<std::vector<uint32_t>> kernel;
        for (int c = 0; c < D; ++c) {
            if (is_pivot[c]) continue;
            std::vector<uint32_t> v(D, 0);
            v[c] = 1;
            for (size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = (p - rows[r][c] % p) % p;
            kernel.push_back(std::move(v));
        }
        if (static_cast<int>(kernel.size()) != d)
            throw internal_consistency_error("subfield of degree " + std::to_string(d) +
                                             " has wrong dimension");
        auto kpivots = rref(kernel, p);
        Subfield sf;
        sf.d = d;
        sf.pivots = kpivots;
        for (auto& row : kernel) sf.basis.push_back(FieldElement{std::move(row)});
        if (!(sf.basis[0] == one()))
            throw internal_consistency_error("canonical subfield basis does not start at 1");
        subfields_.emplace(d, std::move(sf));
    }

    // canonical F_q generator and power basis (small subfields only)
    gen_degree_ = a_;
    double size = 1;
    for (int i = 0; i < a_; ++i) size *= p;
    if (size <= 65536.0) {
        if (a_ == 1) {
            gen_ = zero();
            gen_basis_ = {one()};
        } else {
            Poly mq = smallest_irreducible(a_, p);
            uint64_t total = 1;
            for (int i = 0; i < a_; ++i) total *= p;
            bool found = false;
            for (uint64_t idx = 0; idx < total; ++idx) {
                FieldElement x = subfield_element(a_, idx);
                // Horner evaluation of mq at x
                FieldElement v = from_residue(mq.back());
                for (int j = static_cast<int>(mq.size()) - 2; j >= 0; --j) {
                    v = mul(v, x);
                    v = add(v, from_residue(mq[j]));
                }
                if (v.is_zero()) {
                    gen_ = x;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw internal_consistency_error("canonical generator not found in subfield");
            gen_basis_.clear();
            FieldElement pw = one();
            for (int i = 0; i < a_; ++i) {
                gen_basis_.push_back(pw);
                if (i + 1 < a_) pw = mul(pw, gen_);
            }
        }
        // row-reduce the generator powers, remembering the transform so
        // arbitrary F_q elements can be written in the power basis
        std::vector<std::vector<uint32_t>> rows(a_, std::vector<uint32_t>(D + a_, 0));
        for (int i = 0; i < a_; ++i) {
            for (int j = 0; j < D; ++j) rows[i][j] = gen_basis_[i].coords[j];
            rows[i][D + i] = 1;
        }
        auto piv = rref(rows, p);
        if (static_cast<int>(piv.size()) != a_ || piv.back() >= D)
            throw internal_consistency_error("generator powers are not independent");
        gen_pivots_ = piv;
        gen_solver_.assign(static_cast<size_t>(a_) * (D + a_), 0);
        for (int i = 0; i < a_; ++i)
            for (int j = 0; j < D + a_; ++j) gen_solver_[static_cast<size_t>(i) * (D + a_) + j] = rows[i][j];
    }
}

Integer FieldTower::subfield_size(int d) const {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, static_cast<unsigned long>(d));
    return r;
}

FieldElement FieldTower::zero() const {
    return FieldElement{std::vector<uint32_t>(static_cast<size_t>(D_), 0)};
}

FieldElement FieldTower::one() const {
    auto x = zero();
    x.coords[0] = 1 % p_;
    return x;
}

FieldElement FieldTower::from_residue(uint64_t c) const {
    auto x = zero();
    x.coords[0] = static_cast<uint32_t>(c % p_);
    return x;
}

void FieldTower::add(FieldElement& out, const FieldElement& x, const FieldElement& y) const {
    out.coords.resize(static_cast<size_t>(D_));
    for (int i = 0; i < D_; ++i) out.coords[i] = (x.coords[i] + y.coords[i]) % p_;
}

void FieldTower::sub(FieldElement& out, const FieldElement& x, const FieldElement& y) const {
    out.coords.resize(static_cast<size_t>(D_));
    for (int i = 0; i < D_; ++i) out.coords[i] = (x.coords[i] + p_ - y.coords[i]) % p_;
}

void FieldTower::neg(FieldElement& out, const FieldElement& x) const {
    out.coords.resize(static_cast<size_t>(D_));
    for (int i = 0; i < D_; ++i) out.coords[i] = (p_ - x.coords[i]) % p_;
}

void FieldTower::mul_raw(uint32_t* out, const uint32_t* x, const uint32_t* y) const {
    const int D = D_;
    const uint32_t p = p_;
    std::array<uint64_t, 2 * kMaxAmbientDegree> acc{};
    for (int i = 0; i < D; ++i) {
        if (!x[i]) continue;
        uint64_t xi = x[i];
        for (int j = 0; j < D; ++j) acc[i + j] += xi * y[j];
    }
    for (int e = 2 * D - 2; e >= D; --e) {
        uint32_t v = static_cast<uint32_t>(acc[e] % p);
        if (!v) continue;
        const uint32_t* row = reduction_.data() + static_cast<size_t>(e - D) * D;
        for (int j = 0; j < D; ++j) acc[j] += uint64_t(v) * row[j];
    }
    for (int j = 0; j < D; ++j) out[j] = static_cast<uint32_t>(acc[j] % p);
}

void FieldTower::mul(FieldElement& out, const FieldElement& x, const FieldElement& y) const {
    std::array<uint32_t, kMaxAmbientDegree> tmp;
    mul_raw(tmp.data(), x.coords.data(), y.coords.data());
    out.coords.assign(tmp.begin(), tmp.begin() + D_);
}

void FieldTower::mul_into(uint32_t* out, const uint32_t* x, const uint32_t* y) const {
    mul_raw(out, x, y);
}

FieldElement FieldTower::add(const FieldElement& x, const FieldElement& y) const {
    FieldElement r;
    add(r, x, y);
    return r;
}
FieldElement FieldTower::sub(const FieldElement& x, const FieldElement& y) const {
    FieldElement r;
    sub(r, x, y);
    return r;
}
FieldElement FieldTower::neg(const FieldElement& x) const {
    FieldElement r;
    neg(r, x);
    return r;
}
FieldElement FieldTower::mul(const FieldElement& x, const FieldElement& y) const {
    FieldElement r;
    mul(r, x, y);
    return r;
}

FieldElement FieldTower::pow(const FieldElement& x, uint64_t e) const {
    FieldElement r = one();
    FieldElement b = x;
    while (e) {
        if (e & 1) mul(r, r, b);
        mul(b, b, b);
        e >>= 1;
    }
    return r;
}

FieldElement FieldTower::pow(const FieldElement& x, const Integer& e) const {
    if (sgn(e) < 0) throw validation_error("negative exponent");
    FieldElement r = one();
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        mul(r, r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) mul(r, r, x);
    }
    return r;
}

FieldElement FieldTower::inverse(const FieldElement& x) const {
    if (x.is_zero()) throw validation_error("inverse of zero");
    Integer e = subfield_size(D_) - 2;
    return pow(x, e);
}

void FieldTower::apply_matrix(const std::vector<uint32_t>& m, const uint32_t* in,
                              uint32_t* out) const {
    const int D = D_;
    std::array<uint64_t, kMaxAmbientDegree> acc{};
    for (int j = 0; j < D; ++j) {
        if (!in[j]) continue;
        uint64_t v = in[j];
        const uint32_t* col = m.data() + static_cast<size_t>(j) * D;
        for (int i = 0; i < D; ++i) acc[i] += v * col[i];
    }
    for (int i = 0; i < D; ++i) out[i] = static_cast<uint32_t>(acc[i] % p_);
}

FieldElement FieldTower::frobenius(const FieldElement& x, int e) const {
    if (e < 0) throw validation_error("negative Frobenius power");
    e %= D_;
    if (e == 0) return x;
    FieldElement r = zero();
    apply_matrix(frob_[e - 1], x.coords.data(), r.coords.data());
    return r;
}

FieldElement FieldTower::power_q(const FieldElement& x, int k) const {
    return frobenius(x, (static_cast<long long>(a_) * k) % D_);
}

bool FieldTower::has_subfield(int d) const { return subfields_.count(d) != 0; }

const FieldTower::Subfield& FieldTower::subfield(int d) const {
    auto it = subfields_.find(d);
    if (it == subfields_.end())
        throw validation_error("degree " + std::to_string(d) + " does not divide the ambient degree " +
                               std::to_string(D_));
    return it->second;
}

const std::vector<FieldElement>& FieldTower::subfield_basis(int d) const {
    return subfield(d).basis;
}

FieldElement FieldTower::subfield_element(int d, uint64_t index) const {
    const auto& sf = subfield(d);
    FieldElement r = zero();
    // first basis coordinate is the most significant digit
    for (int i = d - 1; i >= 0; --i) {
        uint32_t digit = static_cast<uint32_t>(index % p_);
        index /= p_;
        if (!digit) continue;
        const auto& b = sf.basis[i].coords;
        for (int j = 0; j < D_; ++j)
            r.coords[j] = static_cast<uint32_t>((r.coords[j] + uint64_t(digit) * b[j]) % p_);
    }
    return r;
}

std::vector<FieldElement> FieldTower::enumerate_subfield(int d, uint64_t limit) const {
    Integer size = subfield_size(d);
    if (size > limit)
        throw budget_error(mpz_get_ui(size.get_mpz_t()), limit);
    uint64_t n = mpz_get_ui(size.get_mpz_t());
    std::vector<FieldElement> out;
    out.reserve(n);
    for (uint64_t i = 0; i < n; ++i) out.push_back(subfield_element(d, i));
    return out;
}

bool FieldTower::in_subfield(const FieldElement& x, int d) const {
    return frobenius(x, d % D_) == x;
}

std::optional<std::vector<uint32_t>> FieldTower::subfield_coords(const FieldElement& x,
                                                                 int d) const {
    const auto& sf = subfield(d);
    std::vector<uint32_t> c(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) c[i] = x.coords[sf.pivots[i]];
    // verify the combination reproduces x
    FieldElement r = zero();
    for (int i = 0; i < d; ++i) {
        if (!c[i]) continue;
        const auto& b = sf.basis[i].coords;
        for (int j = 0; j < D_; ++j)
            r.coords[j] = static_cast<uint32_t>((r.coords[j] + uint64_t(c[i]) * b[j]) % p_);
    }
    if (!(r == x)) return std::nullopt;
    return c;
}

uint64_t FieldTower::subfield_index(const FieldElement& x, int d) const {
    auto c = subfield_coords(x, d);
    if (!c) throw validation_error("element is not in the requested subfield");
    uint64_t idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * p_ + (*c)[i];
    return idx;
}

bool FieldTower::try_subfield_index(const FieldElement& x, int d, uint64_t& out) const {
    const auto& sf = subfield(d);
    std::array<uint64_t, kMaxAmbientDegree> acc{};
    uint64_t idx = 0;
    for (int i = 0; i < d; ++i) {
        uint32_t c = x.coords[sf.pivots[i]];
        idx = idx * p_ + c;
        if (!c) continue;
        const auto& b = sf.basis[i].coords;
        for (int j = 0; j < D_; ++j) acc[j] += uint64_t(c) * b[j];
    }
    for (int j = 0; j < D_; ++j)
        if (acc[j] % p_ != x.coords[j]) return false;
    out = idx;
    return true;
}

std::vector<FieldElement> FieldTower::roots_of_unity(int d, uint64_t m) const {
    if (m < 1) throw validation_error("m must be positive");
    auto elems = enumerate_subfield(d, 1u << 22);
    std::vector<FieldElement> out;
    for (const auto& x : elems) {
        if (x.is_zero()) continue;
        if (pow(x, m) == one()) out.push_back(x);
    }
    return out;
}

uint64_t FieldTower::multiplicative_order(const FieldElement& x, uint64_t limit) const {
    if (x.is_zero()) throw validation_error("order of zero");
    FieldElement y = x;
    uint64_t ord = 1;
    while (!(y == one())) {
        mul(y, y, x);
        if (++ord > limit) throw validation_error("order scan exceeded limit");
    }
    return ord;
}

KummerSolution FieldTower::kummer_solve(int k, const FieldElement& u) const {
    if (u.is_zero()) throw validation_error("kummer_solve requires u != 0");
    Integer Q = q_descriptor().q_pow(k);
    Integer Qm1 = Q - 1;
    if (u == one()) return {one(), 1, Qm1};

    uint64_t m = multiplicative_order(u);
    long long dprime = static_cast<long long>(a_) * k * static_cast<long long>(m);
    if (dprime > D_ || D_ % dprime != 0)
        throw tower_too_small_error("no solution of y^(q^k-1) = u in F_{p^" + std::to_string(D_) +
                                    "}; rebuild with degree multiple of " + std::to_string(dprime));
    int d = static_cast<int>(dprime);

    Integer N = Integer(static_cast<unsigned long>(m)) * Qm1;
    Integer M = subfield_size(d) - 1;
    if (M % N != 0)
        throw internal_consistency_error("kummer subgroup order does not divide field order");
    Integer exp0 = M / N;
    if (!N.fits_ulong_p()) throw validation_error("kummer modulus too large");
    uint64_t n_u64 = mpz_get_ui(N.get_mpz_t());
    auto primes = distinct_prime_factors(n_u64);

    // deterministic scan for a generator of the cyclic group of order N
    FieldElement omega;
    bool found = false;
    uint64_t scanned = 0;
    Integer size = subfield_size(d);
    uint64_t total = size.fits_ulong_p() ? mpz_get_ui(size.get_mpz_t()) : UINT64_MAX;
    for (uint64_t idx = 1; idx < total && scanned < (1u << 16); ++idx, ++scanned) {
        FieldElement cand = pow(subfield_element(d, idx), exp0);
        if (cand.is_zero() || cand == one()) continue;
        bool ok = true;
        for (uint64_t ell : primes) {
            if (pow(cand, n_u64 / ell) == one()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            omega = std::move(cand);
            found = true;
            break;
        }
    }
    if (!found) throw internal_consistency_error("generator scan failed");

    FieldElement eta = pow(omega, Qm1);  // has order m
    FieldElement acc = one();
    for (uint64_t t = 0; t < m; ++t) {
        if (acc == u) {
            FieldElement s = pow(omega, t);
            if (!(pow(s, Qm1) == u))
                throw internal_consistency_error("kummer witness check failed");
            return {std::move(s), static_cast<int>(m), Qm1};
        }
        mul(acc, acc, eta);
    }
    throw internal_consistency_error("kummer matching failed");
}

const FieldElement& FieldTower::canonical_generator(int d) const {
    if (d != gen_degree_ || gen_basis_.empty())
        throw validation_error("canonical generator only available for the base field");
    return gen_;
}

FieldElement FieldTower::embed_fq(const FqValue& v) const {
    if (gen_basis_.empty()) throw validation_error("base field too large for canonical coordinates");
    if (v.coords.size() != static_cast<size_t>(a_))
        throw validation_error("F_q value has wrong coordinate length");
    FieldElement r = zero();
    for (int i = 0; i < a_; ++i) {
        uint32_t c = v.coords[i] % p_;
        if (!c) continue;
        const auto& b = gen_basis_[i].coords;
        for (int j = 0; j < D_; ++j)
            r.coords[j] = static_cast<uint32_t>((r.coords[j] + uint64_t(c) * b[j]) % p_);
    }
    return r;
}

FqValue FieldTower::extract_fq(const FieldElement& x) const {
    if (gen_basis_.empty()) throw validation_error("base field too large for canonical coordinates");
    const int W = D_ + a_;
    // coordinates in the row-reduced generator basis, then back through
    // the recorded transform
    std::vector<uint32_t> c(static_cast<size_t>(a_), 0);
    for (int i = 0; i < a_; ++i) {
        uint32_t r = x.coords[gen_pivots_[i]];
        for (int j = 0; j < a_; ++j)
            c[j] = static_cast<uint32_t>((c[j] + uint64_t(r) * gen_solver_[static_cast<size_t>(i) * W + D_ + j]) % p_);
    }
    FqValue v{c};
    if (!(embed_fq(v) == x)) throw validation_error("element is not in the base field F_q");
    return v;
}

}  // namespace mirrorcount
