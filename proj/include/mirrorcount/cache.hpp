#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "mirrorcount/hypersurface.hpp"
#include "mirrorcount/types.hpp"

namespace mirrorcount {

/// Append-only JSON-lines count cache, one file per (p, a) pair.
/// Corrupt lines and entries from other engine versions are skipped with
/// a warning. Writes are serialized through a single mutex.
class CountCache {
public:
    /// dir empty = disabled cache (all lookups miss, stores are dropped).
    CountCache(std::string dir, QDescriptor q);

    bool enabled() const { return !dir_.empty(); }
    size_t size() const { return entries_.size(); }

    static std::string make_key(const Hypersurface& X, const std::string& twist, int k);

    std::optional<Integer> lookup(const std::string& key) const;
    void store(const std::string& key, const Integer& value);

    /// Fetch-or-compute with deterministic spot verification: when
    /// verify_percent > 0, a hash-selected percentage of cache hits is
    /// recomputed and compared; a mismatch is an integrity failure.
    Integer fetch(const std::string& key, const std::function<Integer()>& compute,
                  int verify_percent = 0, uint64_t seed = 0);

    size_t verified_hits() const { return verified_; }

private:
    std::string file_path() const;

    std::string dir_;
    QDescriptor q_;
    std::map<std::string, Integer> entries_;
    mutable std::mutex mu_;
    size_t verified_ = 0;
};

}  // namespace mirrorcount
