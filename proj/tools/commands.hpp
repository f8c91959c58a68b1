#pragma once

#include <string>
#include <vector>

#include "mloop/spec_io.hpp"

namespace mloop::cli {

// overrides from the command line; unset fields keep the spec's options
struct Flags {
  std::optional<int> window, gamma_window, bound;
  std::optional<std::uint64_t> seed;
  std::optional<long> field_order;
  std::string d_spec;
};

struct Outcome {
  json result;
  int code = 0;  // 0 pass, 1 fail / not found
};

Spec load(const std::string& path, const Flags& f);
json options_json(const SpecOptions& o);

Outcome grade(const Spec& s);
Outcome roots(const Spec& s);
Outcome torus_check(const Spec& s);
Outcome toralize_cmd(const Spec& s);
Outcome iso_verify(const Spec& a, const Spec& b, const std::string& cert_path);
Outcome iso_search(const Spec& a, const Spec& b, int bound);
Outcome eala_build(const Spec& s, const std::string& d_spec);
Outcome eala_verify(const Spec& s, const std::string& d_spec);
Outcome report_all(const std::vector<Spec>& specs);

}  // namespace mloop::cli
