#include "mirrorcount/cache.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace mirrorcount {

namespace {

uint64_t fnv1a_str(const std::string& s, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

CountCache::CountCache(std::string dir, QDescriptor q) : dir_(std::move(dir)), q_(q) {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    std::ifstream in(file_path());
    if (!in) return;
    std::string line;
    size_t bad = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            if (j.at("engine").get<std::string>() != kEngineVersion) continue;
            entries_[j.at("key").get<std::string>()] = Integer(j.at("value").get<std::string>());
        } catch (...) {
            ++bad;
        }
    }
    if (bad)
        std::cerr << "warning: ignored " << bad << " corrupt cache line(s) in " << file_path()
                  << "\n";
}

std::string CountCache::file_path() const {
    return dir_ + "/cache_p" + std::to_string(q_.p) + "_a" + std::to_string(q_.a) + ".jsonl";
}

std::string CountCache::make_key(const Hypersurface& X, const std::string& twist, int k) {
    // canonical term order: sorted exponent vectors
    std::vector<std::pair<std::vector<int>, std::string>> terms;
    for (const auto& t : X.terms) terms.emplace_back(t.exps, t.coeff.str());
    std::sort(terms.begin(), terms.end());
    std::string key = "p=" + std::to_string(X.q.p) + ";a=" + std::to_string(X.q.a) +
                      ";n=" + std::to_string(X.n) + ";eq=";
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) key += '|';
        for (size_t j = 0; j < terms[i].first.size(); ++j) {
            if (j) key += ',';
            key += std::to_string(terms[i].first[j]);
        }
        key += ':';
        key += terms[i].second;
    }
    key += ";twist=" + twist + ";k=" + std::to_string(k);
    return key;
}

std::optional<Integer> CountCache::lookup(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void CountCache::store(const std::string& key, const Integer& value) {
    if (!enabled()) return;
    std::lock_guard<std::mutex> lock(mu_);
    if (!entries_.emplace(key, value).second) return;  // already present
    nlohmann::json j;
    j["key"] = key;
    j["value"] = value.get_str();
    j["engine"] = kEngineVersion;
    std::ofstream out(file_path(), std::ios::app);
    out << j.dump() << "\n";
}

Integer CountCache::fetch(const std::string& key, const std::function<Integer()>& compute,
                          int verify_percent, uint64_t seed) {
    auto hit = lookup(key);
    if (!hit) {
        Integer v = compute();
        store(key, v);
        return v;
    }
    if (verify_percent > 0 &&
        fnv1a_str(key, seed ^ 0x9e3779b97f4a7c15ull) % 100 < static_cast<uint64_t>(verify_percent)) {
        Integer v = compute();
        if (v != *hit)
            throw internal_consistency_error("cache entry disagrees with recomputation for key " +
                                             key + ": " + hit->get_str() + " vs " + v.get_str());
        std::lock_guard<std::mutex> lock(mu_);
        ++verified_;
    }
    return *hit;
}

}  // namespace mirrorcount
