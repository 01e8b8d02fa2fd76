#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace mirrorcount {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr char kEngineVersion[] = "1.0.0";

/// Identifies the base field F_q with q = p^a.
struct QDescriptor {
    uint32_t p = 0;
    int a = 1;

    Integer q() const {
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(a));
        return r;
    }
    Integer q_pow(int k) const {
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(a) * k);
        return r;
    }
    bool operator==(const QDescriptor&) const = default;
};

/// An element of F_q in tower-independent form: coordinates with respect
/// to the basis 1, g, g^2, ..., g^{a-1}, where g is the canonical
/// generator of F_q (a fixed root of the lexicographically smallest
/// monic irreducible polynomial of degree a over F_p). For a = 1 this is
/// just the residue mod p.
struct FqValue {
    std::vector<uint32_t> coords;

    FqValue() = default;
    explicit FqValue(std::vector<uint32_t> c) : coords(std::move(c)) {}
    static FqValue residue(uint32_t c, int a = 1) {
        std::vector<uint32_t> v(static_cast<size_t>(a), 0);
        v[0] = c;
        return FqValue(std::move(v));
    }
    bool is_zero() const {
        for (uint32_t c : coords)
            if (c) return false;
        return true;
    }
    bool operator==(const FqValue&) const = default;
    std::string str() const {
        std::string s;
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coords[i]);
        }
        return s;
    }
};

}  // namespace mirrorcount
