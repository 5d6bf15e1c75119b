#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cox/system.hpp"

// Named verification suites driving the library's invariants over one
// system at configurable depth.  Shared by the CLI `verify` command and the
// acceptance harness.

namespace cox {

struct SuiteParams {
  int max_length = 8;
  int radius = 0;       // 0: oracle radii chosen by stabilization
  int nmax = 8;
  int samples = 10000;  // sampled-property suites
  std::uint64_t seed = 0xC0C0A;
  bool corrupt = false;  // negative control: deliberately break fixtures
};

struct RunReport {
  std::string suite;
  std::string system_id;
  SuiteParams params;
  long cases = 0;
  long failures = 0;
  std::vector<std::string> witnesses;  // serialized words, capped
  double wall_ms = 0.0;

  long passes() const { return cases - failures; }
  bool ok() const { return failures == 0; }
};

// thmA1     shift-closure minimum equals the brute-force class minimum, and
//           "cyclically reduced iff minimal" holds element-wise
// thmA2     tight closure of one minimal element is the full minimal set
// thmA3     straight classes: minimal set connected under equal-length shifts
// lemma36   cyclic-shift closure equals the shift-step closure
// engines   exact and numeric engines agree on reducedness and descents
// gate      gate property, projection monotonicity (sampled)
// convexity interval closedness of every minimal-chamber sample
// lustzig   normalizer decompositions: additive lengths, valid automorphism
// parabolic subset conjugator agrees with a brute-force search
// twisted   twisted-shift closures reach the brute-force twisted minimum
const std::vector<std::string>& suite_names();

RunReport run_suite(const CoxeterSystem& sys, const std::string& suite,
                    const SuiteParams& params, const std::string& system_id);

}  // namespace cox
