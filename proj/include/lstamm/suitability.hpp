#pragma once

#include "lstamm/cfmm.hpp"

#include <string_view>
#include <vector>

namespace lstamm {

enum class LstKind { Rebase, Reward };

// What the LST is paired against.
enum class CounterAsset { Underlying, RebaseLst, RewardLst };

struct SuitableAmm {
    FamilyTag family;
    bool rebalancing_required = false;

    friend bool operator==(const SuitableAmm&, const SuitableAmm&) = default;
};

struct SuitabilityRow {
    LstKind lst_kind;
    CounterAsset counter_asset;
    std::vector<SuitableAmm> amms;
};

/// AMM families suited (by liquidity efficiency) to an LST pair. Pairs
/// outside the table (e.g. rebase-LST against reward-LST) yield an empty set.
std::vector<SuitableAmm> suitability(LstKind lst_kind, CounterAsset counter_asset);

/// The full table, one row per listed pair.
std::vector<SuitabilityRow> suitability_table();

std::string_view to_string(LstKind kind) noexcept;
std::string_view to_string(CounterAsset asset) noexcept;

}  // namespace lstamm
