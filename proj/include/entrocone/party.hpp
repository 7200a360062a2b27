#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace entrocone {

// Subsets of the party index set are bitmasks: party i <-> bit i.
using mask_t = std::uint32_t;

inline int popcount(mask_t m) { return __builtin_popcount(m); }

// Ordered set of party labels, at most 8 parties. The declaration order
// fixes the bit positions of every subset mask, so serialized masks are
// reproducible across modules.
class PartySystem {
public:
    explicit PartySystem(std::vector<std::string> names);

    // Parties "a", "b", "c", ... for n <= 8.
    static PartySystem alphabetic(int n);

    int size() const { return static_cast<int>(names_.size()); }
    mask_t full_mask() const { return (mask_t{1} << names_.size()) - 1; }
    mask_t complement(mask_t j) const;

    const std::string& label(int party) const { return names_.at(party); }
    const std::vector<std::string>& labels() const { return names_; }
    int party_index(std::string_view label) const;  // -1 if unknown

    // Subset <-> sorted label concatenation ("acd"). Parsing matches labels
    // greedily against the declared names.
    std::string subset_label(mask_t j) const;
    mask_t subset_mask(std::string_view concat) const;

    bool operator==(const PartySystem& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

}  // namespace entrocone
