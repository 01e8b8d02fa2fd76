#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "mirrorcount/errors.hpp"
#include "mirrorcount/types.hpp"

namespace mirrorcount {

/// Element of the ambient field F_{p^D}: dense coefficient vector of
/// length D with respect to the power basis of the modulus, fully
/// reduced mod p. Equality is coordinate equality. All arithmetic lives
/// on FieldTower.
struct FieldElement {
    std::vector<uint32_t> coords;

    bool is_zero() const {
        for (uint32_t c : coords)
            if (c) return false;
        return true;
    }
    bool operator==(const FieldElement&) const = default;
};

uint64_t hash_value(const FieldElement& x);

struct FieldElementHash {
    size_t operator()(const FieldElement& x) const {
        return static_cast<size_t>(hash_value(x));
    }
};

/// Witness data returned by kummer_solve: s satisfies s^(Q-1) = u, and
/// the full solution set of y^(Q-1) = u is the coset s * F_Q^x of size
/// Q - 1.
struct KummerSolution {
    FieldElement s;
    int order_of_u = 1;    // multiplicative order of u
    Integer coset_size;    // Q - 1
};

inline constexpr int kDefaultDegreeBudget = 64;

/// One ambient finite field F_{p^D} realizing every subfield an
/// experiment needs. The modulus is the lexicographically smallest monic
/// irreducible polynomial of degree D over F_p (coefficients compared
/// from the constant term upward), so towers are reproducible across
/// runs. Immutable after construction and shareable between threads.
class FieldTower {
public:
    uint32_t p() const { return p_; }
    int a() const { return a_; }
    int ambient_degree() const { return D_; }
    QDescriptor q_descriptor() const { return {p_, a_}; }
    /// Monic modulus, constant term first, length D+1.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    Integer subfield_size(int d) const;
    const std::vector<int>& stored_degrees() const { return degrees_; }

    // --- elements ---
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_residue(uint64_t c) const;

    // --- arithmetic ---
    void add(FieldElement& out, const FieldElement& x, const FieldElement& y) const;
    void sub(FieldElement& out, const FieldElement& x, const FieldElement& y) const;
    void neg(FieldElement& out, const FieldElement& x) const;
    void mul(FieldElement& out, const FieldElement& x, const FieldElement& y) const;
    FieldElement add(const FieldElement& x, const FieldElement& y) const;
    FieldElement sub(const FieldElement& x, const FieldElement& y) const;
    FieldElement neg(const FieldElement& x) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;
    /// Raw coefficient-pointer multiply for table-driven inner loops;
    /// out must hold ambient_degree() entries and may not alias inputs.
    void mul_into(uint32_t* out, const uint32_t* x, const uint32_t* y) const;
    FieldElement pow(const FieldElement& x, uint64_t e) const;
    FieldElement pow(const FieldElement& x, const Integer& e) const;
    FieldElement inverse(const FieldElement& x) const;

    /// x -> x^(p^e), applied as a cached F_p-linear map. e in [0, D].
    FieldElement frobenius(const FieldElement& x, int e = 1) const;
    /// x -> x^(q^k), the k-th power of the arithmetic Frobenius over F_q.
    FieldElement power_q(const FieldElement& x, int k) const;

    // --- subfields (d is the absolute degree over F_p, d | D) ---
    bool has_subfield(int d) const;
    /// F_p-basis of the fixed field of x -> x^(p^d); basis[0] == 1.
    const std::vector<FieldElement>& subfield_basis(int d) const;
    /// Element number `index` of the size-p^d subfield, in the
    /// deterministic enumeration order (lexicographic in basis
    /// coordinates, first coordinate most significant).
    FieldElement subfield_element(int d, uint64_t index) const;
    /// All p^d elements in enumeration order. Guarded by `limit`.
    std::vector<FieldElement> enumerate_subfield(int d, uint64_t limit = 1u << 24) const;
    bool in_subfield(const FieldElement& x, int d) const;
    /// Coordinates of x with respect to subfield_basis(d), if x lies in
    /// that subfield.
    std::optional<std::vector<uint32_t>> subfield_coords(const FieldElement& x, int d) const;
    /// Enumeration index of a subfield element (inverse of
    /// subfield_element). Throws validation_error if x is not in the
    /// subfield.
    uint64_t subfield_index(const FieldElement& x, int d) const;
    /// Allocation-free variant for hot loops; returns false when x is
    /// not in the subfield.
    bool try_subfield_index(const FieldElement& x, int d, uint64_t& out) const;

    /// All solutions of x^m = 1 inside the size-p^d subfield, in
    /// enumeration order. The result has gcd(m, p^d - 1) elements.
    std::vector<FieldElement> roots_of_unity(int d, uint64_t m) const;

    /// One solution s of s^(Q-1) = u for Q = q^k; the solution set is
    /// the coset s * F_{q^k}^x. Throws tower_too_small_error when the
    /// ambient field cannot contain s.
    KummerSolution kummer_solve(int k, const FieldElement& u) const;

    /// Multiplicative order of a nonzero element (guarded scan).
    uint64_t multiplicative_order(const FieldElement& x, uint64_t limit = 1u << 22) const;

    // --- canonical F_q interface (tower-independent coordinates) ---
    /// Canonical generator of the size-p^d subfield: the first root, in
    /// subfield enumeration order, of the lexicographically smallest
    /// monic irreducible polynomial of degree d over F_p. Only supported
    /// for small subfields (p^d <= 2^16).
    const FieldElement& canonical_generator(int d) const;
    FieldElement embed_fq(const FqValue& v) const;
    FqValue extract_fq(const FieldElement& x) const;

    friend FieldTower build_tower(uint32_t p, int a, const std::set<int>& degrees_needed,
                                  int degree_budget);

private:
    FieldTower() = default;

    struct Subfield {
        int d = 0;
        std::vector<FieldElement> basis;   // rref rows; basis[0] == 1
        std::vector<int> pivots;           // pivot column of each row
    };

    const Subfield& subfield(int d) const;
    void build_internal();
    void apply_matrix(const std::vector<uint32_t>& m, const uint32_t* in, uint32_t* out) const;
    void mul_raw(uint32_t* out, const uint32_t* x, const uint32_t* y) const;

    uint32_t p_ = 0;
    int a_ = 1;
    int D_ = 1;
    std::vector<uint32_t> modulus_;              // length D+1, monic
    std::vector<uint32_t> reduction_;            // (D-1) rows of D: x^(D+e) mod f
    std::vector<std::vector<uint32_t>> frob_;    // frob_[e] = matrix of x -> x^(p^(e+1))
    std::map<int, Subfield> subfields_;
    std::vector<int> degrees_;
    // canonical F_q data
    int gen_degree_ = 0;
    FieldElement gen_;
    std::vector<FieldElement> gen_basis_;        // 1, g, ..., g^(a-1)
    std::vector<uint32_t> gen_solver_;           // row-reduced [basis | id] solve data
    std::vector<int> gen_pivots_;
};

/// Builds the ambient field for an experiment. degrees_needed is a set
/// of extension degrees over F_q; the ambient degree is
/// D = a * lcm(degrees_needed). Subfield bases are extracted for every
/// divisor of D, so membership tests x^(p^d) = x need no extra setup.
FieldTower build_tower(uint32_t p, int a, const std::set<int>& degrees_needed,
                       int degree_budget = kDefaultDegreeBudget);

bool is_prime_u64(uint64_t n);

}  // namespace mirrorcount
