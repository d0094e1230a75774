#pragma once

#include "dnstime/level_model.hpp"
#include "dnstime/rng.hpp"
#include "dnstime/types.hpp"
#include "dnstime/workload.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dnstime {

// One resolution-level sample in microseconds:
//   round((offset_ms + Poisson(lambda_ms) + Uniform(0, jitter_ms)) * 1000)
// clamped to >= 1 so every emitted RTT is strictly positive. ConfigError if the
// model has no entry (named or "*") for the pair.
std::int64_t sample_level_rtt(const LevelModel& model, DnsLevel level,
                              const std::string& server, Rng& rng);

// Cache answer in microseconds: uniform over a +/-75 us band centered on half
// the ping mean (cache responses sit below the ping value), clamped to >= 1.
std::int64_t sample_cache_rtt(const LevelModel& model, Rng& rng);

// Upstream contact chain for a transaction answered at `level`:
//   Root  -> root, gtld, sld        Gtld -> gtld, sld
//   Cctld -> cctld, sld             Sld  -> sld
//   Host  -> host (a host-level server answered directly)
// Cache has no contacts.
std::vector<DnsLevel> resolution_chain(DnsLevel level);

// Benign traffic. Per query: the domain is drawn uniformly from the workload,
// the answering level from the domain's effective shares, and the RTT from the
// model. Resolution transactions sum their contact RTTs plus one client leg
// (a cache-band sample for the client<->resolver hop). Query ids are
// sequential mod 65536. Identical (workload, model, seed) triples produce
// identical output on every platform.
std::vector<Transaction> simulate_benign(const Workload& workload, const LevelModel& model,
                                         std::uint64_t seed);

// One spoofed response per benign query: same query id and domain, RTT drawn
// uniformly (integer microseconds) from the model's attack entry, labeled
// Attack. ConfigError if the model has no attack entry.
std::vector<Transaction> simulate_attack(std::span<const Transaction> benign,
                                         const LevelModel& model, std::uint64_t seed);

} // namespace dnstime
