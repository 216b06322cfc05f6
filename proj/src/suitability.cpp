#include "lstamm/suitability.hpp"

namespace lstamm {

std::vector<SuitabilityRow> suitability_table() {
    return {
        {LstKind::Rebase, CounterAsset::Underlying, {{FamilyTag::Stableswap, false}}},
        {LstKind::Rebase, CounterAsset::RebaseLst, {{FamilyTag::Stableswap, false}}},
        {LstKind::Reward,
         CounterAsset::Underlying,
         {{FamilyTag::Cryptoswap, false}, {FamilyTag::ConcentratedLiquidity, true}}},
        {LstKind::Reward,
         CounterAsset::RewardLst,
         {{FamilyTag::Cryptoswap, false}, {FamilyTag::ConcentratedLiquidity, false}}},
    };
}

std::vector<SuitableAmm> suitability(LstKind lst_kind, CounterAsset counter_asset) {
    for (auto& row : suitability_table()) {
        if (row.lst_kind == lst_kind && row.counter_asset == counter_asset) return row.amms;
    }
    return {};
}

std::string_view to_string(LstKind kind) noexcept {
    return kind == LstKind::Rebase ? "rebase-LST" : "reward-LST";
}

std::string_view to_string(CounterAsset asset) noexcept {
    switch (asset) {
        case CounterAsset::Underlying: return "underlying";
        case CounterAsset::RebaseLst: return "rebase-LST";
        case CounterAsset::RewardLst: return "reward-LST";
    }
    return "unknown";
}

}  // namespace lstamm
