#pragma once

#include "dnstime/level_model.hpp"
#include "dnstime/workload.hpp"

#include <string>
#include <vector>

namespace dnstime {

// Built-in measurement profiles:
//   local — resolver on a LAN: ~2 ms ping, root answers mostly 80-160 ms,
//           gTLDs mostly 80-120 ms, resolve mass starting near 50 ms.
//   cloud — resolver in a datacenter: sub-millisecond ping, root/gTLD answers
//           mostly inside 0-40 ms.
//   iucc  — resolver on an academic backbone: root/gTLD answers mostly
//           40-80 ms.
//   sep   — synthetic profile whose per-level totals occupy disjoint ranges;
//           useful for validating classifiers under perfect separation.
// ConfigError for unknown names.
LevelModel builtin_model(const std::string& name);
Workload builtin_workload(const std::string& name);

const std::vector<std::string>& builtin_profile_names();

} // namespace dnstime
