#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rec/scenario.hpp"

namespace rec {

/// Loads a scenario from an INI-style text file: sections [market],
/// [spot_price], [purchase_price], [gas_price], [demand]; one `key = value`
/// per line; `#` comments. Unknown keys are rejected; the inert correlation
/// keys rho_v / rho_p are accepted with a warning and ignored. The loaded
/// scenario is validated before being returned.
MarketScenario load_scenario(const std::string& path,
                             std::vector<std::string>* warnings = nullptr);

/// Writes a scenario in the format accepted by load_scenario, with full
/// double precision so values round-trip bit-exactly.
void save_scenario(const MarketScenario& s, std::ostream& out);
void save_scenario(const MarketScenario& s, const std::string& path);

}  // namespace rec
