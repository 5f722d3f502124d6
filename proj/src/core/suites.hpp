#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "io.hpp"
#include "metric_space.hpp"

namespace freelip {

using Params = std::map<std::string, std::string>;

// Named generators: example_3_13 (N), example_3_17 (N), tripod (n),
// grid (n), fat_cantor (k), uniform_gap (n, D, seed), random (n, dim, side,
// seed), snowflake (n, theta). Unknown names or parameters raise
// InvalidParameter.
SpacePtr generate_space(const std::string& family, const Params& params, std::uint64_t seed);
const std::vector<std::string>& family_names();

// "random:count=..,maxn=..,seed=..[,minn=..,dim=..,side=..]",
// "gap:count=..,n=..,D=..,seed=..", "family:NAME[,k=v...]" or a metric file
// path.
std::vector<SpacePtr> spaces_from_spec(const std::string& spec);

// Tracks the smallest or largest value seen under each key.
class Extremes {
 public:
  void low(const std::string& key, const Rational& value);
  void high(const std::string& key, const Rational& value);
  void merge(const Extremes& other);
  Json to_json() const;

 private:
  struct Entry {
    bool is_max;
    Rational value;
  };
  void update(const std::string& key, const Rational& value, bool is_max);
  std::map<std::string, Entry> entries_;
};

struct SuiteReport {
  std::string suite;
  std::size_t spaces = 0;
  std::size_t instances = 0;
  std::size_t skipped = 0;  // instances whose preconditions fail
  std::vector<Json> failures;  // {"space": metric JSON, "tuple": {...}, "detail": ...}
  Extremes extremes;
  bool ok() const { return failures.empty(); }
  Json to_json() const;
};

const std::vector<std::string>& suite_names();
// Space spec used when none is given.
std::string default_spaces(const std::string& suite);

// Instances run per space on up to `threads` workers; records are merged in
// input order.
SuiteReport run_suite(const std::string& suite, const std::vector<SpacePtr>& spaces, std::uint64_t seed,
                      std::size_t threads);

}  // namespace freelip
