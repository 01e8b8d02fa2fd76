#pragma once

#include <optional>
#include <vector>

#include "mirrorcount/counting.hpp"
#include "mirrorcount/hypersurface.hpp"

namespace mirrorcount {

/// Monomial automorphism of P^n: a diagonal scaling by nonzero F_q
/// values, optionally composed with a coordinate permutation. The
/// scaling acts first, then the permutation moves slot i to perm[i].
struct GroupElement {
    std::vector<FqValue> scalings;
    std::vector<int> perm;

    bool is_identity_perm() const {
        for (size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != static_cast<int>(i)) return false;
        return true;
    }
    bool is_diagonal() const { return is_identity_perm(); }
    bool operator==(const GroupElement&) const = default;
};

/// A finite group of monomial automorphisms together with its target.
/// An empty variety means the group acts on all of P^n. Construction
/// verifies the group axioms by table and, when a variety is present,
/// that every element maps its defining polynomial to a nonzero scalar
/// multiple of itself.
struct GroupAction {
    int n = 2;
    QDescriptor q;
    std::optional<Hypersurface> variety;
    std::vector<GroupElement> elements;  // elements[0] is the identity
    int exponent = 1;                    // lcm of orders as automorphisms of P^n

    Integer order() const { return Integer(static_cast<unsigned long>(elements.size())); }
};

inline constexpr size_t kGroupOrderCap = 4096;

/// The diagonal group {(z_0,...,z_n) : z_i^(n+1) = 1, prod z_i = 1}
/// acting on a degree-(n+1) family member; its order is gcd(n+1, q-1)^n.
GroupAction dwork_diagonal_group(QDescriptor q, const Hypersurface& X);

GroupAction trivial_group(QDescriptor q, int n, std::optional<Hypersurface> X);

/// Closure of the given coordinate permutations (as pure monomial maps).
GroupAction permutation_group(QDescriptor q, int n, std::optional<Hypersurface> X,
                              const std::vector<std::vector<int>>& generators);

/// Smallest m with g^m acting trivially on P^n (g^m a scalar tuple).
int projective_order(QDescriptor q, const GroupElement& g);

enum class LambdaPath { automatic, kummer, brute };

/// Twisted fixed-point number: the number of geometric points of the
/// target fixed by g composed with the k-th Frobenius power. Diagonal
/// elements take the Kummer-coset chart path with cost about q^(kn);
/// everything else enumerates the target over F_{q^(k*m)} and tests
/// fixedness point by point. Both paths agree where both run.
CountRecord lambda_twisted(const FieldTower& t, const GroupAction& A, const GroupElement& g,
                           int k, LambdaPath path, BudgetMeter& budget, int threads = 1);

/// #(X/G)(F_{q^k}) = (1/|G|) * sum over g of the twisted fixed-point
/// numbers. The sum is verified divisible by |G| before dividing;
/// failure is an internal arithmetic error, never a property of the
/// input. Lambda values for distinct g run concurrently.
CountRecord burnside_quotient_count(const FieldTower& t, const GroupAction& A, int k,
                                    LambdaPath path, BudgetMeter& budget, int threads = 1);

/// One G-orbit of geometric points over F_{q^(k*e)}.
struct OrbitRecord {
    std::vector<std::vector<FieldElement>> points;  // canonical representatives
    Integer stabilizer_size;
    bool frobenius_stable = false;
};

struct OrbitOracleResult {
    Integer count;  // number of F^k-stable orbits
    std::vector<OrbitRecord> orbits;
};

/// Independent quotient counter: partitions the target's points over
/// F_{q^(k*e)} into G-orbits and counts the orbits preserved by the
/// coordinatewise q^k power map. Equals burnside_quotient_count on every
/// in-budget instance.
OrbitOracleResult orbit_oracle(const FieldTower& t, const GroupAction& A, int k,
                               BudgetMeter& budget);

}  // namespace mirrorcount
