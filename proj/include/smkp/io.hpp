// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SMKP_IO_HPP
#define SMKP_IO_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "smkp/errors.hpp"
#include "smkp/instance.hpp"
#include "smkp/matroid.hpp"
#include "smkp/oracle.hpp"
#include "smkp/rational.hpp"

namespace smkp {

using ordered_json = nlohmann::ordered_json;

// Wire format. Instances and solutions are JSON documents; every numeric
// quantity travels as a canonical "p/q" fraction string so that parsing and
// emitting are exact inverses. Emission always uses two-space indentation,
// insertion-ordered fields, and a trailing newline.

enum class InstanceKind { kSmkp, kPartitionMatroid };

template <class V>
struct ParsedInput {
  InstanceKind kind = InstanceKind::kSmkp;
  std::optional<Instance<V>> smkp;
  std::optional<PartitionMatroidInstance<V>> matroid;
  std::string oracle_family;
  // Canonical form of the document, independent of the field order and
  // whitespace of the input bytes.
  ordered_json document;
};

namespace io_detail {

inline const ordered_json& need_field(const ordered_json& obj, const char* key,
                                      const char* where) {
  auto it = obj.find(key);
  require(it != obj.end(), ErrorCode::kMalformedInput,
          std::string(where) + ": missing field \"" + key + "\"");
  return *it;
}

inline std::string need_string(const ordered_json& node, const char* where) {
  require(node.is_string(), ErrorCode::kMalformedInput,
          std::string(where) + ": expected a string");
  return node.template get<std::string>();
}

inline std::uint64_t need_uint(const ordered_json& node, const char* where) {
  if (node.is_number_unsigned()) return node.template get<std::uint64_t>();
  require(node.is_number_integer(), ErrorCode::kMalformedInput,
          std::string(where) + ": expected a non-negative integer");
  const std::int64_t v = node.template get<std::int64_t>();
  require(v >= 0, ErrorCode::kMalformedInput,
          std::string(where) + ": expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

inline Rational need_fraction(const ordered_json& node, const char* where) {
  return parse_fraction(need_string(node, where));
}

inline Rational need_positive_fraction(const ordered_json& node,
                                       const char* where) {
  Rational r = need_fraction(node, where);
  require(r > Rational(0), ErrorCode::kMalformedInput,
          std::string(where) + ": value must be positive");
  return r;
}

// Elements must arrive with dense ids 0..n-1 in ascending order; duplicate or
// out-of-range ids are rejected rather than reordered.
inline std::vector<Rational> parse_elements(const ordered_json& node) {
  require(node.is_array(), ErrorCode::kMalformedInput,
          "elements: expected an array");
  std::vector<Rational> sizes;
  sizes.reserve(node.size());
  std::size_t expect = 0;
  for (const auto& entry : node) {
    require(entry.is_object(), ErrorCode::kMalformedInput,
            "elements: each entry must be an object");
    std::uint64_t id = need_uint(need_field(entry, "id", "elements"),
                                 "elements.id");
    require(id == expect, ErrorCode::kMalformedInput,
            "elements: ids must be 0..n-1 in order, got " +
                std::to_string(id) + " at position " + std::to_string(expect));
    sizes.push_back(need_positive_fraction(
        need_field(entry, "size", "elements"), "elements.size"));
    ++expect;
  }
  return sizes;
}

template <class V>
std::vector<V> parse_weights(const ordered_json& node, std::size_t n,
                             const char* where) {
  require(node.is_array(), ErrorCode::kMalformedInput,
          std::string(where) + ": expected an array");
  require(node.size() == n, ErrorCode::kMalformedInput,
          std::string(where) + ": expected " + std::to_string(n) +
              " entries, got " + std::to_string(node.size()));
  std::vector<V> out;
  out.reserve(n);
  for (const auto& w : node) {
    Rational r = need_fraction(w, where);
    require(r >= Rational(0), ErrorCode::kMalformedInput,
            std::string(where) + ": weights must be non-negative");
    out.push_back(ValueTraits<V>::from_rational(r));
  }
  return out;
}

}  // namespace io_detail

template <class V>
std::shared_ptr<Oracle<V>> make_oracle(const ordered_json& spec,
                                       std::size_t n) {
  using io_detail::need_field;
  require(spec.is_object(), ErrorCode::kMalformedInput,
          "oracle: expected an object");
  const std::string family =
      io_detail::need_string(need_field(spec, "family", "oracle"),
                             "oracle.family");
  if (family == "modular") {
    auto weights = io_detail::parse_weights<V>(
        need_field(spec, "weights", "oracle"), n, "oracle.weights");
    return std::make_shared<ModularOracle<V>>(std::move(weights));
  }
  if (family == "weighted-coverage") {
    const auto& covers_node = need_field(spec, "covers", "oracle");
    require(covers_node.is_array() && covers_node.size() == n,
            ErrorCode::kMalformedInput,
            "oracle.covers: expected one point list per element");
    const auto& pw_node = need_field(spec, "point_weights", "oracle");
    require(pw_node.is_array(), ErrorCode::kMalformedInput,
            "oracle.point_weights: expected an array");
    const std::size_t universe = pw_node.size();
    std::vector<std::vector<std::uint32_t>> covers;
    covers.reserve(n);
    for (const auto& row : covers_node) {
      require(row.is_array(), ErrorCode::kMalformedInput,
              "oracle.covers: each entry must be an array of point indices");
      std::vector<std::uint32_t> pts;
      pts.reserve(row.size());
      for (const auto& p : row) {
        std::uint64_t idx = io_detail::need_uint(p, "oracle.covers");
        require(idx < universe, ErrorCode::kMalformedInput,
                "oracle.covers: point index out of range");
        pts.push_back(static_cast<std::uint32_t>(idx));
      }
      covers.push_back(std::move(pts));
    }
    auto point_weights = io_detail::parse_weights<V>(pw_node, universe,
                                                     "oracle.point_weights");
    return std::make_shared<WeightedCoverageOracle<V>>(
        std::move(covers), std::move(point_weights));
  }
  if (family == "concave-over-modular") {
    auto weights = io_detail::parse_weights<V>(
        need_field(spec, "weights", "oracle"), n, "oracle.weights");
    Rational alpha = io_detail::need_positive_fraction(
        need_field(spec, "alpha", "oracle"), "oracle.alpha");
    require(alpha <= Rational(1), ErrorCode::kMalformedInput,
            "oracle.alpha: exponent must lie in (0, 1]");
    const BigInt an = num(alpha);
    const BigInt ad = den(alpha);
    require(ad <= BigInt(1000000), ErrorCode::kMalformedInput,
            "oracle.alpha: denominator too large");
    return std::make_shared<ConcaveOverModularOracle<V>>(
        std::move(weights), static_cast<unsigned>(an),
        static_cast<unsigned>(ad));
  }
  fail(ErrorCode::kMalformedInput,
       "oracle.family: unknown family \"" + family + "\"");
}

namespace io_detail {

// Rebuilds the document from parsed data so emission is canonical regardless
// of how the input bytes were formatted.
inline ordered_json canonical_elements(const std::vector<Rational>& sizes) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ordered_json e;
    e["id"] = i;
    e["size"] = to_fraction_string(sizes[i]);
    arr.push_back(std::move(e));
  }
  return arr;
}

inline ordered_json canonical_oracle(const ordered_json& spec,
                                     const std::string& family,
                                     std::size_t n) {
  ordered_json out;
  out["family"] = family;
  if (family == "modular" || family == "concave-over-modular") {
    ordered_json weights = ordered_json::array();
    const auto& src = need_field(spec, "weights", "oracle");
    for (std::size_t i = 0; i < n; ++i) {
      weights.push_back(to_fraction_string(parse_fraction(
          need_string(src[i], "oracle.weights"))));
    }
    out["weights"] = std::move(weights);
    if (family == "concave-over-modular") {
      out["alpha"] = to_fraction_string(parse_fraction(need_string(
          need_field(spec, "alpha", "oracle"), "oracle.alpha")));
    }
  } else {
    const auto& covers = need_field(spec, "covers", "oracle");
    ordered_json rows = ordered_json::array();
    for (const auto& row : covers) {
      ordered_json r = ordered_json::array();
      for (const auto& p : row) r.push_back(need_uint(p, "oracle.covers"));
      rows.push_back(std::move(r));
    }
    out["covers"] = std::move(rows);
    ordered_json pw = ordered_json::array();
    for (const auto& w : need_field(spec, "point_weights", "oracle")) {
      pw.push_back(to_fraction_string(
          parse_fraction(need_string(w, "oracle.point_weights"))));
    }
    out["point_weights"] = std::move(pw);
  }
  return out;
}

}  // namespace io_detail

template <class V>
ParsedInput<V> parse_instance_json(const ordered_json& doc) {
  using io_detail::need_field;
  require(doc.is_object(), ErrorCode::kMalformedInput,
          "instance: expected a JSON object");
  std::uint64_t version = io_detail::need_uint(
      need_field(doc, "version", "instance"), "version");
  require(version == 1, ErrorCode::kMalformedInput,
          "version: unsupported version " + std::to_string(version));
  const std::string kind =
      io_detail::need_string(need_field(doc, "kind", "instance"), "kind");

  std::vector<Rational> sizes =
      io_detail::parse_elements(need_field(doc, "elements", "instance"));
  const std::size_t n = sizes.size();
  const ordered_json& oracle_spec = need_field(doc, "oracle", "instance");
  auto oracle = make_oracle<V>(oracle_spec, n);
  const std::string family = io_detail::need_string(
      need_field(oracle_spec, "family", "oracle"), "oracle.family");

  ParsedInput<V> out;
  out.oracle_family = family;
  out.document["version"] = 1;
  out.document["kind"] = kind;
  out.document["elements"] = io_detail::canonical_elements(sizes);

  if (kind == "smkp") {
    const auto& bins_node = need_field(doc, "bins", "instance");
    require(bins_node.is_array() && !bins_node.empty(),
            ErrorCode::kMalformedInput,
            "bins: expected a non-empty array");
    Instance<V> inst;
    inst.n = n;
    inst.sizes.reserve(n);
    for (const auto& s : sizes)
      inst.sizes.push_back(ValueTraits<V>::from_rational(s));
    ordered_json bins = ordered_json::array();
    for (const auto& b : bins_node) {
      Rational cap = io_detail::need_positive_fraction(b, "bins");
      inst.capacities.push_back(ValueTraits<V>::from_rational(cap));
      bins.push_back(to_fraction_string(cap));
    }
    inst.oracle = oracle;
    inst.validate();
    out.kind = InstanceKind::kSmkp;
    out.document["bins"] = std::move(bins);
    out.document["oracle"] =
        io_detail::canonical_oracle(oracle_spec, family, n);
    out.smkp = std::move(inst);
    return out;
  }

  if (kind == "partition-matroid") {
    const auto& parts_node = need_field(doc, "partitions", "instance");
    const auto& card_node = need_field(doc, "cardinalities", "instance");
    require(parts_node.is_array() && !parts_node.empty(),
            ErrorCode::kMalformedInput,
            "partitions: expected a non-empty array");
    require(card_node.is_array() && card_node.size() == parts_node.size(),
            ErrorCode::kMalformedInput,
            "cardinalities: expected one bound per partition");
    PartitionMatroidInstance<V> inst;
    inst.n = n;
    ordered_json parts = ordered_json::array();
    for (const auto& row : parts_node) {
      require(row.is_array() && !row.empty(), ErrorCode::kMalformedInput,
              "partitions: each partition must be a non-empty array");
      SortedSet part;
      ordered_json prow = ordered_json::array();
      for (const auto& v : row) {
        std::uint64_t id = io_detail::need_uint(v, "partitions");
        require(id < n, ErrorCode::kMalformedInput,
                "partitions: element id out of range");
        part.push_back(static_cast<ElementId>(id));
        prow.push_back(id);
      }
      require(is_canonical_set(part), ErrorCode::kMalformedInput,
              "partitions: ids must be strictly increasing");
      inst.partitions.push_back(std::move(part));
      parts.push_back(std::move(prow));
    }
    ordered_json cards = ordered_json::array();
    for (const auto& c : card_node) {
      std::uint64_t k = io_detail::need_uint(c, "cardinalities");
      require(k >= 1, ErrorCode::kMalformedInput,
              "cardinalities: bounds must be at least 1");
      inst.bounds.push_back(static_cast<std::size_t>(k));
      cards.push_back(k);
    }
    inst.oracle = oracle;
    inst.validate();
    out.kind = InstanceKind::kPartitionMatroid;
    out.document["partitions"] = std::move(parts);
    out.document["cardinalities"] = std::move(cards);
    out.document["oracle"] =
        io_detail::canonical_oracle(oracle_spec, family, n);
    out.matroid = std::move(inst);
    return out;
  }

  fail(ErrorCode::kMalformedInput, "kind: unknown kind \"" + kind + "\"");
}

template <class V>
ParsedInput<V> parse_instance(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kMalformedInput, std::string("invalid JSON: ") + e.what());
  }
  return parse_instance_json<V>(doc);
}

inline std::string emit_document(const ordered_json& doc) {
  return doc.dump(2) + "\n";
}

// Solution files carry the objective value, the bin of every packed element,
// any reserved markers, and a solver-specific report object.
inline std::string emit_solution(const Rational& value, const Packing& packing,
                                 const ordered_json& report) {
  ordered_json doc;
  doc["value"] = to_fraction_string(value);
  ordered_json assignment = ordered_json::object();
  for (std::size_t i = 0; i < packing.bin_of.size(); ++i) {
    if (packing.bin_of[i] != 0)
      assignment[std::to_string(i)] = packing.bin_of[i];
  }
  doc["assignment"] = std::move(assignment);
  ordered_json reserved = ordered_json::array();
  for (const auto& [id, bin] : packing.reserved)
    reserved.push_back(ordered_json::array({id, bin}));
  doc["reserved"] = std::move(reserved);
  doc["report"] = report;
  return emit_document(doc);
}

struct ParsedSolution {
  Rational value;
  Packing packing;
  ordered_json report;
};

inline ParsedSolution parse_solution(const std::string& text, std::size_t n) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kMalformedInput, std::string("invalid JSON: ") + e.what());
  }
  using io_detail::need_field;
  require(doc.is_object(), ErrorCode::kMalformedInput,
          "solution: expected a JSON object");
  ParsedSolution out;
  out.value = io_detail::need_fraction(need_field(doc, "value", "solution"),
                                       "value");
  out.packing = Packing::empty(n);
  const auto& assignment = need_field(doc, "assignment", "solution");
  require(assignment.is_object(), ErrorCode::kMalformedInput,
          "assignment: expected an object");
  for (const auto& [key, bin_node] : assignment.items()) {
    std::size_t pos = 0;
    std::uint64_t id = 0;
    try {
      id = std::stoull(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    require(pos == key.size() && !key.empty(), ErrorCode::kMalformedInput,
            "assignment: keys must be element ids, got \"" + key + "\"");
    require(id < n, ErrorCode::kMalformedInput,
            "assignment: element id out of range");
    std::uint64_t bin = io_detail::need_uint(bin_node, "assignment");
    require(bin >= 1 && bin <= 1000000, ErrorCode::kMalformedInput,
            "assignment: bins are numbered from 1");
    out.packing.bin_of[static_cast<std::size_t>(id)] =
        static_cast<std::int32_t>(bin);
  }
  const auto& reserved = need_field(doc, "reserved", "solution");
  require(reserved.is_array(), ErrorCode::kMalformedInput,
          "reserved: expected an array");
  for (const auto& pair : reserved) {
    require(pair.is_array() && pair.size() == 2, ErrorCode::kMalformedInput,
            "reserved: each entry must be a [element, bin] pair");
    std::uint64_t id = io_detail::need_uint(pair[0], "reserved");
    std::uint64_t bin = io_detail::need_uint(pair[1], "reserved");
    require(id < n && bin >= 1 && bin <= 1000000, ErrorCode::kMalformedInput,
            "reserved: entry out of range");
    out.packing.reserved.push_back({static_cast<ElementId>(id),
                                    static_cast<std::int32_t>(bin)});
  }
  auto it = doc.find("report");
  if (it != doc.end()) out.report = *it;
  return out;
}

// Seeded generators. All draws are integer arithmetic on the raw engine
// output, so generated documents are byte-identical across platforms.

namespace io_detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo,
                          std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

inline std::string draw_fraction(std::mt19937_64& rng, std::uint64_t num_lo,
                                 std::uint64_t num_hi, bool halves) {
  std::uint64_t p = draw(rng, num_lo, num_hi);
  std::uint64_t q = halves && (rng() & 1) ? 2 : 1;
  return to_fraction_string(Rational(BigInt(p), BigInt(q)));
}

inline ordered_json draw_oracle(std::mt19937_64& rng,
                                const std::string& family, std::size_t n) {
  ordered_json oracle;
  oracle["family"] = family;
  if (family == "modular" || family == "concave-over-modular") {
    ordered_json weights = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
      weights.push_back(to_fraction_string(
          Rational(BigInt(draw(rng, 0, 10)))));
    }
    oracle["weights"] = std::move(weights);
    if (family == "concave-over-modular") {
      std::uint64_t q = draw(rng, 2, 4);
      std::uint64_t p = draw(rng, 1, q);
      oracle["alpha"] = to_fraction_string(Rational(BigInt(p), BigInt(q)));
    }
  } else if (family == "weighted-coverage") {
    std::size_t universe = n + static_cast<std::size_t>(draw(rng, 1, n + 1));
    ordered_json covers = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t p = 0; p < universe; ++p) {
        if (rng() & 1) row.push_back(p);
      }
      covers.push_back(std::move(row));
    }
    ordered_json pw = ordered_json::array();
    for (std::size_t p = 0; p < universe; ++p) {
      pw.push_back(to_fraction_string(Rational(BigInt(draw(rng, 0, 5)))));
    }
    oracle["covers"] = std::move(covers);
    oracle["point_weights"] = std::move(pw);
  } else {
    fail(ErrorCode::kMalformedInput,
         "generator: unknown oracle family \"" + family + "\"");
  }
  return oracle;
}

}  // namespace io_detail

struct InstanceGenConfig {
  std::uint64_t seed = 1;
  std::size_t n = 6;
  std::size_t m = 2;
  std::string family = "modular";
  // Element sizes draw numerators from [1, size_hi], optionally halved.
  std::uint64_t size_hi = 8;
  bool half_sizes = true;
  // Bin capacities draw integers from [cap_lo, cap_hi].
  std::uint64_t cap_lo = 6;
  std::uint64_t cap_hi = 16;
};

inline ordered_json generate_instance(const InstanceGenConfig& cfg) {
  require(cfg.n >= 1 && cfg.m >= 1, ErrorCode::kMalformedInput,
          "generator: need at least one element and one bin");
  require(cfg.size_hi >= 1 && cfg.cap_lo >= 1 && cfg.cap_lo <= cfg.cap_hi,
          ErrorCode::kMalformedInput, "generator: invalid size bounds");
  std::mt19937_64 rng(cfg.seed);
  ordered_json doc;
  doc["version"] = 1;
  doc["kind"] = "smkp";
  ordered_json elements = ordered_json::array();
  for (std::size_t i = 0; i < cfg.n; ++i) {
    ordered_json e;
    e["id"] = i;
    e["size"] = io_detail::draw_fraction(rng, 1, cfg.size_hi, cfg.half_sizes);
    elements.push_back(std::move(e));
  }
  doc["elements"] = std::move(elements);
  ordered_json bins = ordered_json::array();
  for (std::size_t j = 0; j < cfg.m; ++j) {
    bins.push_back(to_fraction_string(
        Rational(BigInt(io_detail::draw(rng, cfg.cap_lo, cfg.cap_hi)))));
  }
  doc["bins"] = std::move(bins);
  doc["oracle"] = io_detail::draw_oracle(rng, cfg.family, cfg.n);
  return doc;
}

struct MatroidGenConfig {
  std::uint64_t seed = 1;
  std::size_t r = 2;
  std::size_t part_lo = 2;
  std::size_t part_hi = 5;
  std::size_t bound_lo = 2;
  std::size_t bound_hi = 3;
  std::string family = "weighted-coverage";
  // When non-empty, fixes the partition sizes instead of drawing them.
  std::vector<std::size_t> explicit_sizes;
};

inline ordered_json generate_matroid_instance(const MatroidGenConfig& cfg) {
  require(cfg.r >= 1 && cfg.part_lo >= 1 && cfg.part_lo <= cfg.part_hi &&
              cfg.bound_lo >= 1 && cfg.bound_lo <= cfg.bound_hi,
          ErrorCode::kMalformedInput, "generator: invalid matroid bounds");
  require(cfg.explicit_sizes.empty() || cfg.explicit_sizes.size() == cfg.r,
          ErrorCode::kMalformedInput,
          "generator: explicit sizes must name every partition");
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> part_sizes(cfg.r);
  std::size_t n = 0;
  for (std::size_t j = 0; j < cfg.r; ++j) {
    part_sizes[j] = cfg.explicit_sizes.empty()
                        ? static_cast<std::size_t>(
                              io_detail::draw(rng, cfg.part_lo, cfg.part_hi))
                        : cfg.explicit_sizes[j];
    require(part_sizes[j] >= 1, ErrorCode::kMalformedInput,
            "generator: partitions cannot be empty");
    n += part_sizes[j];
  }
  ordered_json doc;
  doc["version"] = 1;
  doc["kind"] = "partition-matroid";
  ordered_json elements = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) {
    ordered_json e;
    e["id"] = i;
    e["size"] = "1/1";
    elements.push_back(std::move(e));
  }
  doc["elements"] = std::move(elements);
  ordered_json parts = ordered_json::array();
  std::size_t next_id = 0;
  for (std::size_t j = 0; j < cfg.r; ++j) {
    ordered_json row = ordered_json::array();
    for (std::size_t i = 0; i < part_sizes[j]; ++i) row.push_back(next_id++);
    parts.push_back(std::move(row));
  }
  doc["partitions"] = std::move(parts);
  ordered_json cards = ordered_json::array();
  for (std::size_t j = 0; j < cfg.r; ++j) {
    cards.push_back(io_detail::draw(rng, cfg.bound_lo, cfg.bound_hi));
  }
  doc["cardinalities"] = std::move(cards);
  doc["oracle"] = io_detail::draw_oracle(rng, cfg.family, n);
  return doc;
}

}  // namespace smkp

#endif  // SMKP_IO_HPP
