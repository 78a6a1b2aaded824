#pragma once

// JSON encodings shared by the CLI and tests. Faces are written as sorted
// arrays of 1-based indices; everything else follows the type layout.
// Malformed documents raise ParseError; out-of-domain values raise the
// error of the constructor that rejects them.

#include "json.hpp"

#include "mixedsimplex/fsa.hpp"
#include "mixedsimplex/info_theory.hpp"
#include "mixedsimplex/mfsa.hpp"
#include "mixedsimplex/mixed_dist.hpp"
#include "mixedsimplex/samplers.hpp"
#include "mixedsimplex/simplex.hpp"

namespace mixedsimplex::io {

using Json = nlohmann::ordered_json;

/// Parses text, mapping syntax errors to ParseError.
Json parse(std::string_view text);

Json to_json(const SimplexPoint& p);
SimplexPoint point_from_json(const Json& j);

Json to_json(Face f);
Face face_from_json(const Json& j);

Json to_json(const FaceSet& s);
FaceSet face_set_from_json(const Json& j);

/// {"kind": "dirichlet", "alpha": [...]}, {"kind": "gaussian_softmax", "z", "sigma"},
/// {"kind": "gumbel_softmax", "z", "beta"}, {"kind": "hard_concrete", "z", "beta",
/// "lambda"}, {"kind": "gaussian_sparsemax", "z", "sigma"}.
Json to_json(const SamplerSpec& spec);
SamplerSpec spec_from_json(const Json& j);

/// {"K", "faces": [{"indices", "mass", "conditional": {"kind": "flat" |
/// "truncated_gaussian_k2" (z, sigma) | "empirical" (samples)}}]}.
Json to_json(const MixedDistribution& d);
MixedDistribution distribution_from_json(const Json& j);

/// {"K", "states", "semiring"?: "boolean"|"probability", "initial": [{"state",
/// "weight"}], "final": [...], "edges": [{"src", "dst", "faces", "weight",
/// "epsilon"}]}. States are 0-based.
Json to_json(const Mfsa& a);
Mfsa mfsa_from_json(const Json& j);

/// Face alphabets write "faces" (1-based indices) per edge, symbol alphabets
/// write a 1-based "symbol".
Json to_json(const Fsa& a);

/// Either an array of points or {"K", "symbols": [...]} (needed for the
/// empty string).
MixedString string_from_json(const Json& j);

/// {"components": [{"z", "weight", "distribution"}]}.
Joint joint_from_json(const Json& j);

}  // namespace mixedsimplex::io
