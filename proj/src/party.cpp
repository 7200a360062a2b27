#include "entrocone/party.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace entrocone {

PartySystem::PartySystem(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty() || names_.size() > 8)
        throw std::invalid_argument("party system needs 1..8 parties");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw std::invalid_argument("empty party label");
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate party label '" + n + "'");
    }
}

PartySystem PartySystem::alphabetic(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("alphabetic party count out of range");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    return PartySystem(std::move(names));
}

mask_t PartySystem::complement(mask_t j) const {
    if (j > full_mask()) throw std::invalid_argument("subset mask outside universe");
    return full_mask() & ~j;
}

int PartySystem::party_index(std::string_view label) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == label) return static_cast<int>(i);
    return -1;
}

std::string PartySystem::subset_label(mask_t j) const {
    if (j > full_mask()) throw std::invalid_argument("subset mask outside universe");
    std::string out;
    for (size_t i = 0; i < names_.size(); ++i)
        if (j & (mask_t{1} << i)) out += names_[i];
    return out;
}

mask_t PartySystem::subset_mask(std::string_view concat) const {
    mask_t j = 0;
    size_t pos = 0;
    while (pos < concat.size()) {
        // longest label match at the current position
        int best = -1;
        size_t best_len = 0;
        for (size_t i = 0; i < names_.size(); ++i) {
            const auto& n = names_[i];
            if (n.size() > best_len && concat.substr(pos, n.size()) == n) {
                best = static_cast<int>(i);
                best_len = n.size();
            }
        }
        if (best < 0)
            throw std::invalid_argument("unknown party label in subset '" + std::string(concat) + "'");
        j |= mask_t{1} << best;
        pos += best_len;
    }
    return j;
}

}  // namespace entrocone
