//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <string>
#include <vector>

#include "biocorpus/corpus.hpp"
#include "biocorpus/error.hpp"
#include "biocorpus/rng.hpp"

namespace biocorpus {
namespace {

// Byte offset of every code point, plus the total size at the end.
std::vector<std::size_t> code_point_offsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  offsets.reserve(text.size() + 1);
  for (std::size_t i = 0; i < text.size(); ++i)
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80)
      offsets.push_back(i);
  offsets.push_back(text.size());
  return offsets;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

struct CodePoints {
  std::string_view text;
  std::vector<std::size_t> offsets;

  std::size_t size() const { return offsets.size() - 1; }
  // First byte of code point i; multi-byte code points never match ASCII.
  char lead(std::size_t i) const { return text[offsets[i]]; }
  std::string_view slice(std::size_t b, std::size_t e) const {
    return text.substr(offsets[b], offsets[e] - offsets[b]);
  }
};

std::vector<std::pair<std::size_t, std::size_t>> split(const CodePoints &cp,
                                                       const std::vector<EntityAnnotation> &annotations) {
  const std::size_t n = cp.size();
  auto crossed = [&](std::size_t point) {
    return std::any_of(annotations.begin(), annotations.end(),
                       [point](const EntityAnnotation &a) { return a.start < point && a.end > point; });
  };
  auto starts_annotation = [&](std::size_t point) {
    return std::any_of(annotations.begin(), annotations.end(),
                       [point](const EntityAnnotation &a) { return a.start == point; });
  };
  auto skip_space = [&](std::size_t i) {
    while (i < n && is_space(cp.lead(i)) && !starts_annotation(i))
      ++i;
    return i;
  };

  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = skip_space(0);
  for (std::size_t i = start; i + 1 < n; ++i) {
    if (!is_terminator(cp.lead(i)) || !is_space(cp.lead(i + 1)))
      continue;
    std::size_t boundary = i + 1;
    if (crossed(boundary))
      continue;
    out.emplace_back(start, boundary);
    start = skip_space(boundary);
    i = start - 1;  // boundary >= 1, so start >= 1
  }
  if (start < n) {
    std::size_t end = n;
    std::size_t last_annotation = 0;
    for (const EntityAnnotation &a : annotations)
      if (a.end > start)
        last_annotation = std::max(last_annotation, a.end);
    while (end > start && end > last_annotation && is_space(cp.lead(end - 1)))
      --end;
    if (end > start)
      out.emplace_back(start, end);
  }
  return out;
}

void validate(const CodePoints &cp, std::vector<EntityAnnotation> &sorted) {
  std::sort(sorted.begin(), sorted.end(),
            [](const EntityAnnotation &a, const EntityAnnotation &b) { return a.start < b.start; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const EntityAnnotation &a = sorted[i];
    std::string where = "[" + std::to_string(a.start) + ", " + std::to_string(a.end) + ")";
    if (a.start >= a.end || a.end > cp.size())
      throw Error(ErrorCode::kInvalidSpan, where + " outside a text of " + std::to_string(cp.size())
                                               + " characters or empty");
    if (i > 0 && sorted[i - 1].end > a.start)
      throw Error(ErrorCode::kInvalidSpan, where + " overlaps the previous annotation");
    if (!a.surface.empty() && cp.slice(a.start, a.end) != a.surface)
      throw Error(ErrorCode::kInvalidSpan, where + " covers '" + std::string(cp.slice(a.start, a.end))
                                               + "', not '" + a.surface + "'");
  }
}

}  // namespace

std::string_view entity_kind_name(EntityKind k) noexcept { return k == EntityKind::kMolecule ? "molecule" : "gene"; }

std::vector<std::pair<std::size_t, std::size_t>> split_sentences(std::string_view text,
                                                                 const std::vector<EntityAnnotation> &annotations) {
  CodePoints cp{ text, code_point_offsets(text) };
  return split(cp, annotations);
}

WrapResult wrap_document(std::string_view text, const std::vector<EntityAnnotation> &annotations,
                         const SequenceLookup &mol_lookup, const SequenceLookup &prot_lookup, std::uint64_t seed) {
  CodePoints cp{ text, code_point_offsets(text) };
  std::vector<EntityAnnotation> sorted = annotations;
  validate(cp, sorted);

  WrapResult result;
  Rng rng(seed);
  std::size_t next_annotation = 0;
  for (auto [sb, se] : split(cp, sorted)) {
    ++result.stats.sentences;
    std::vector<const EntityAnnotation *> mentions;
    while (next_annotation < sorted.size() && sorted[next_annotation].start < se) {
      if (sorted[next_annotation].start >= sb)
        mentions.push_back(&sorted[next_annotation]);
      ++next_annotation;
    }

    std::vector<std::size_t> genes;
    for (std::size_t m = 0; m < mentions.size(); ++m) {
      const EntityAnnotation &a = *mentions[m];
      const SequenceLookup &table = a.kind == EntityKind::kMolecule ? mol_lookup : prot_lookup;
      if (table.count(a.entity_id) == 0)
        ++result.stats.unresolved_mentions;
      else if (a.kind == EntityKind::kGene)
        genes.push_back(m);
    }
    std::size_t chosen = mentions.size();
    if (!genes.empty())
      chosen = genes[static_cast<std::size_t>(rng.below(genes.size()))];

    std::string out;
    std::size_t substitutions = 0;
    std::size_t pos = sb;
    for (std::size_t m = 0; m < mentions.size(); ++m) {
      const EntityAnnotation &a = *mentions[m];
      out += cp.slice(pos, a.start);
      pos = a.end;
      if (a.kind == EntityKind::kMolecule) {
        auto it = mol_lookup.find(a.entity_id);
        if (it == mol_lookup.end()) {
          out += cp.slice(a.start, a.end);
        } else {
          out += special::kBom;
          out += it->second;
          out += special::kEom;
          ++substitutions;
          ++result.stats.molecules_replaced;
        }
      } else {
        out += cp.slice(a.start, a.end);
        if (m == chosen) {
          out += " ";
          out += special::kBom;
          out += prot_lookup.at(a.entity_id);
          out += special::kEom;
          ++substitutions;
          ++result.stats.genes_appended;
        }
      }
    }
    out += cp.slice(pos, se);
    (substitutions > 0 ? result.wrapped : result.plain).push_back(std::move(out));
  }
  return result;
}

}  // namespace biocorpus
