#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "mloop/eala.hpp"

namespace mloop {

using json = nlohmann::ordered_json;

struct SpecOptions {
  int window = 3;
  int gamma_window = 2;
  int bound = 5;
  std::uint64_t seed = 0;
  long field_order = 0;  // 0: session order
};

struct EalaSection {
  DSpec d;
  std::vector<TauEntry> tau;
};

struct Spec {
  std::string name;
  long order = 1;  // session cyclotomic order
  std::shared_ptr<const LieAlgebra> g;
  AutTuple sigma;
  SpecOptions opt;
  std::optional<EalaSection> eala;
  json raw;
};

// ParseError for malformed JSON or schema, ValidationError (with the offending field) otherwise
Spec parse_spec(const std::string& path);
Spec parse_spec_text(const std::string& text, const std::string& name = "<string>");
Spec parse_spec_json(const json& j, const std::string& name);
Multiloop spec_multiloop(const Spec& s);

// rationals as "p/q" strings; other values as coefficient arrays on powers of zeta_order
json cycnum_json(const CycNum& x, long order);
CycNum cycnum_from_json(const json& j, long order, const std::string& where);
json mat_json(const Mat& m, long order);
Mat mat_from_json(const json& j, long order, const std::string& where);
json intmat_json(const IntMat& m);
IntMat intmat_from_json(const json& j, const std::string& where);

// {schema, cyclotomic_order, s: {root label: [rationals]}, P, phi}; labels from the base of L
json certificate_json(const Multiloop& L, const IsoCertificate& c, long order);
IsoCertificate certificate_from_json(const Multiloop& L, const json& j);
IsoCertificate read_certificate(const Multiloop& L, const std::string& path);

json frame_json(const Spec& s, const EalaFrame& f);

// FNV-1a over the canonical dump
std::string digest(const json& j);

}  // namespace mloop
