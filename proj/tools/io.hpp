#pragma once

// JSON encodings of groups, complexes, groupoids, morphisms and reports.
//
// Integers that fit in 64 bits are written as numbers, larger ones as decimal
// strings; both forms are accepted on input.

#include "ogk/bourn.hpp"
#include "ogk/error.hpp"

#include <json.hpp>

#include <string>

namespace ogk::io {

using nlohmann::json;

// A well-formed document that does not match the expected shape. The message
// names the offending field.
struct SchemaError : InvalidInput {
  using InvalidInput::InvalidInput;
};

// InvalidInput carrying the byte position on malformed text.
json parse(const std::string& text);
json read_file(const std::string& path);

json to_json(const Integer& x);
Integer integer_from_json(const json& j, const std::string& field);

// Rows of entries; shape is known from context so empty matrices round-trip.
json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j, const std::string& field, std::size_t rows, std::size_t cols);

// {"free_rank": r, "torsion": [d1, ...]}
json to_json(const FgAbGroup& g);
FgAbGroup group_from_json(const json& j, const std::string& field = "group");

// {"lower_bound", "upper_bound", "components": {"i": G}, "differentials": {"i": {"matrix": [...]}}}
json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const json& j, const std::string& field = "complex");

// {"level", "cells": {"d": [names]}, "src"/"tgt": {"d": {name: name}},
//  "units": {"d": {name: name}}, "comp": {"i,j": [[v, u, v∗u], ...]}, "inv": {"i,j": {name: name}}}
json to_json(const TruncatedOmegaCat& c);
json to_json(const TruncatedOmegaGpd& g);
TruncatedOmegaCat category_from_json(const json& j, const std::string& field = "groupoid");
// Uses "inv" when present (checked), otherwise searches the inverses.
TruncatedOmegaGpd groupoid_from_json(const json& j, const std::string& field = "groupoid");

// {"level", "groups": {"d": G}, "src"/"tgt": {"d": {"matrix"}}, "units": {"d": {"matrix"}}}
json to_json(const AbOmegaGroupoid& g);
AbOmegaGroupoid ab_groupoid_from_json(const json& j, const std::string& field = "abelian");

// {"source": groupoid, "target": groupoid, "map": {"d": {name: name}}}
json to_json(const OmegaMorphism& f);
OmegaMorphism morphism_from_json(const json& j, const std::string& field = "morphism");

json to_json(const DecompositionReport& r);
DecompositionReport report_from_json(const json& j, const std::string& field = "report");
// Equality of every serialized field.
bool same_report(const DecompositionReport& a, const DecompositionReport& b);

} // namespace ogk::io
