#pragma once

namespace qlink {

inline constexpr const char* kToolVersion = "0.1.0";

// bumped whenever a formula in docs/model_ledger.md changes
inline constexpr const char* kModelLedgerVersion = "1";

}  // namespace qlink
