#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sdr {

struct DomainSpec {
  std::string family;
  std::map<std::string, long long> params;  // missing keys take family defaults
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  std::string domain;
  std::string problem;
};

// Deterministic in (family, params, seed). Throws InvalidParams.
GeneratedInstance generate(const DomainSpec& spec);

const std::vector<std::string>& domain_families();

// "n=5,pairs=2" -> {n:5, pairs:2}. Throws InvalidParams on malformed input.
std::map<std::string, long long> parse_params(const std::string& text);

}  // namespace sdr
