#pragma once

// Seeded verification cases behind `algrowth verify --seed S --count N` and
// the acceptance binary. Each case is a pure function of its seed and
// carries a replay document that reproduces it through `verify --input`.

#include <cstdint>
#include <string>
#include <vector>

#include "algrowth/filt.hpp"
#include "algrowth/io.hpp"

namespace algrowth {

enum class LemmaKind { FiltrationAxiom, GrowthToFiltration, TwGeneratorBound, TwActionObject, TwRelations, Retract };

/// Accepts the numbered names (lemma-4-6, ...) and the descriptive aliases.
LemmaKind parse_lemma(const std::string& name);
std::string lemma_name(LemmaKind kind);
std::string lemma_alias(LemmaKind kind);

struct SeededCase {
  std::uint64_t seed = 0;
  VerificationReport report;
  io::Json replay;  ///< A-infinity document plus a "replay" block naming lemma and seed
};

SeededCase run_seeded(LemmaKind kind, std::uint64_t seed);

/// Runs the lemma on a parsed document (as written by a replay, or by hand).
/// A document holding only a "replay" block re-runs that seed.
SeededCase run_document(LemmaKind kind, const io::Json& doc, int arity_bound = 3);

/// Named deterministic fixtures: "surface" (genus 2 group algebra),
/// "free-group" (rank 2), "free-algebra" (two letters). `window` bounds the
/// word length / the n range.
VerificationReport run_fixture(LemmaKind kind, const std::string& fixture, int window);

/// Cocycles of hom(o, o): a basis of ker mu^1 in that hom.
std::vector<Vec> endomorphism_cocycles(const AInfOps& ops, int o);

}  // namespace algrowth
