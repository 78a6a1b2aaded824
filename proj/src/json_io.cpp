#include "mixedsimplex/json_io.hpp"

#include <string>

#include "mixedsimplex/error.hpp"

namespace mixedsimplex::io {
namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(number(x, what));
  return v;
}

double optional_number(const Json& j, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, key);
}

std::string kind_of(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) fail("'kind' must be a string");
  return k.get<std::string>();
}

Json conditional_to_json(const ConditionalDensity& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Flat>) {
          return {{"kind", "flat"}};
        } else if constexpr (std::is_same_v<T, TruncatedGaussianK2>) {
          return {{"kind", "truncated_gaussian_k2"}, {"z", v.z}, {"sigma", v.sigma}};
        } else {
          Json samples = Json::array();
          for (const auto& p : v.samples) samples.push_back(to_json(p));
          return {{"kind", "empirical"}, {"samples", std::move(samples)}};
        }
      },
      c);
}

ConditionalDensity conditional_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "flat") return Flat{};
  if (kind == "truncated_gaussian_k2")
    return TruncatedGaussianK2{number(field(j, "z"), "z"), number(field(j, "sigma"), "sigma")};
  if (kind == "empirical") {
    const Json& s = field(j, "samples");
    if (!s.is_array()) fail("'samples' must be an array");
    Empirical e;
    for (const auto& p : s) e.samples.push_back(point_from_json(p));
    return e;
  }
  fail("unknown conditional kind '" + kind + "'");
}

std::vector<std::pair<std::size_t, double>> weighted_states(const Json& j, const char* key) {
  std::vector<std::pair<std::size_t, double>> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) fail(std::string("'") + key + "' must be an array");
  for (const auto& e : *it) {
    if (e.is_number()) {
      out.emplace_back(count(e, "state"), 1.0);
    } else {
      out.emplace_back(count(field(e, "state"), "state"), optional_number(e, "weight", 1.0));
    }
  }
  return out;
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
}

Json to_json(const SimplexPoint& p) { return Json(p.values()); }

SimplexPoint point_from_json(const Json& j) { return SimplexPoint(numbers(j, "simplex point")); }

Json to_json(Face f) {
  Json out = Json::array();
  for (std::size_t k : f.indices()) out.push_back(k + 1);
  return out;
}

Face face_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("a face is a non-empty array of 1-based indices");
  std::vector<std::size_t> idx;
  for (const auto& x : j) {
    const std::size_t k = count(x, "face index");
    if (k == 0 || k > kMaxFaceK) fail("face indices are 1-based and at most 64");
    idx.push_back(k - 1);
  }
  return Face::from_indices(idx);
}

Json to_json(const FaceSet& s) {
  Json out = Json::array();
  for (Face f : s) out.push_back(to_json(f));
  return out;
}

FaceSet face_set_from_json(const Json& j) {
  if (!j.is_array()) fail("a face set is an array of faces");
  std::vector<Face> faces;
  for (const auto& f : j) faces.push_back(face_from_json(f));
  return FaceSet(std::move(faces));
}

Json to_json(const SamplerSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Dirichlet>)
          return {{"kind", "dirichlet"}, {"alpha", s.alpha}};
        else if constexpr (std::is_same_v<T, GaussianSoftmax>)
          return {{"kind", "gaussian_softmax"}, {"z", s.z}, {"sigma", s.sigma}};
        else if constexpr (std::is_same_v<T, GumbelSoftmax>)
          return {{"kind", "gumbel_softmax"}, {"z", s.z}, {"beta", s.beta}};
        else if constexpr (std::is_same_v<T, HardConcrete>)
          return {{"kind", "hard_concrete"}, {"z", s.z}, {"beta", s.beta}, {"lambda", s.lambda}};
        else
          return {{"kind", "gaussian_sparsemax"}, {"z", s.z}, {"sigma", s.sigma}};
      },
      spec);
}

SamplerSpec spec_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  SamplerSpec spec;
  if (kind == "dirichlet") {
    spec = Dirichlet{numbers(field(j, "alpha"), "alpha")};
  } else if (kind == "gaussian_softmax") {
    spec = GaussianSoftmax{numbers(field(j, "z"), "z"), optional_number(j, "sigma", 1.0)};
  } else if (kind == "gumbel_softmax") {
    spec = GumbelSoftmax{numbers(field(j, "z"), "z"), optional_number(j, "beta", 1.0)};
  } else if (kind == "hard_concrete") {
    spec = HardConcrete{numbers(field(j, "z"), "z"), optional_number(j, "beta", 1.0),
                        optional_number(j, "lambda", 1.0)};
  } else if (kind == "gaussian_sparsemax") {
    spec = GaussianSparsemax{numbers(field(j, "z"), "z"), optional_number(j, "sigma", 1.0)};
  } else {
    throw Error(ErrorKind::BadSpec, "unknown sampler kind '" + kind + "'");
  }
  validate(spec);
  return spec;
}

Json to_json(const MixedDistribution& d) {
  Json faces = Json::array();
  for (const auto& c : d.components())
    faces.push_back(
        {{"indices", to_json(c.face)}, {"mass", c.mass}, {"conditional", conditional_to_json(c.conditional)}});
  return {{"K", d.K()}, {"faces", std::move(faces)}};
}

MixedDistribution distribution_from_json(const Json& j) {
  const std::size_t K = count(field(j, "K"), "K");
  const Json& faces = field(j, "faces");
  if (!faces.is_array()) fail("'faces' must be an array");
  std::vector<FaceComponent> comps;
  for (const auto& f : faces) {
    auto it = f.find("conditional");
    comps.push_back({face_from_json(field(f, "indices")), number(field(f, "mass"), "mass"),
                     it == f.end() ? ConditionalDensity{Flat{}} : conditional_from_json(*it)});
  }
  return MixedDistribution(K, std::move(comps));
}

Json to_json(const Mfsa& a) {
  Json initial = Json::array(), final = Json::array(), edges = Json::array();
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    if (a.is_initial(s)) initial.push_back({{"state", s}, {"weight", a.initial_weight(s)}});
    if (a.is_final(s)) final.push_back({{"state", s}, {"weight", a.final_weight(s)}});
  }
  for (const auto& e : a.edges()) {
    Json edge = {{"src", e.src}, {"dst", e.dst}};
    if (e.epsilon)
      edge["epsilon"] = true;
    else
      edge["faces"] = to_json(e.support);
    edge["weight"] = e.weight;
    edges.push_back(std::move(edge));
  }
  return {{"K", a.K()},
          {"states", a.num_states()},
          {"semiring", a.semiring() == Semiring::Boolean ? "boolean" : "probability"},
          {"initial", std::move(initial)},
          {"final", std::move(final)},
          {"edges", std::move(edges)}};
}

Mfsa mfsa_from_json(const Json& j) {
  const std::size_t K = count(field(j, "K"), "K");
  const std::size_t n = count(field(j, "states"), "states");
  Semiring semiring = Semiring::Boolean;
  if (auto it = j.find("semiring"); it != j.end()) {
    if (*it == "probability")
      semiring = Semiring::Probability;
    else if (*it != "boolean")
      fail("'semiring' must be \"boolean\" or \"probability\"");
  }
  Mfsa a(K, semiring);
  a.add_states(n);
  for (auto [s, w] : weighted_states(j, "initial")) a.set_initial(s, w);
  for (auto [s, w] : weighted_states(j, "final")) a.set_final(s, w);
  if (auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) fail("'edges' must be an array");
    for (const auto& e : *it) {
      const std::size_t src = count(field(e, "src"), "src");
      const std::size_t dst = count(field(e, "dst"), "dst");
      const double w = optional_number(e, "weight", 1.0);
      auto eps = e.find("epsilon");
      if (eps != e.end() && !eps->is_boolean()) fail("'epsilon' must be a boolean");
      if (eps != e.end() && eps->get<bool>())
        a.add_epsilon(src, dst, w);
      else
        a.add_edge(src, dst, face_set_from_json(field(e, "faces")), w);
    }
  }
  return a;
}

Json to_json(const Fsa& a) {
  const bool faces = a.alphabet() == Fsa::Alphabet::Faces;
  Json initial = Json::array(), final = Json::array(), edges = Json::array();
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    if (a.is_initial(s)) initial.push_back(s);
    if (a.is_final(s)) final.push_back(s);
  }
  for (const auto& e : a.edges()) {
    Json edge = {{"src", e.src}, {"dst", e.dst}};
    if (e.epsilon)
      edge["epsilon"] = true;
    else if (faces)
      edge["face"] = to_json(Face(e.symbol));
    else
      edge["symbol"] = e.symbol + 1;
    edges.push_back(std::move(edge));
  }
  return {{"alphabet", faces ? "faces" : "symbols"},
          {"states", a.num_states()},
          {"initial", std::move(initial)},
          {"final", std::move(final)},
          {"edges", std::move(edges)}};
}

MixedString string_from_json(const Json& j) {
  const Json* symbols = &j;
  std::size_t K = 0;
  if (j.is_object()) {
    K = count(field(j, "K"), "K");
    symbols = &field(j, "symbols");
  }
  if (!symbols->is_array()) fail("a mixed string is an array of simplex points");
  std::vector<SimplexPoint> points;
  for (const auto& p : *symbols) points.push_back(point_from_json(p));
  if (K == 0) {
    if (points.empty()) fail("an empty mixed string needs an explicit K");
    K = points.front().size();
  }
  return MixedString(K, std::move(points));
}

Joint joint_from_json(const Json& j) {
  const Json& comps = field(j, "components");
  if (!comps.is_array()) fail("'components' must be an array");
  Joint joint;
  for (const auto& c : comps) {
    const Json& z = field(c, "z");
    std::string label = z.is_string() ? z.get<std::string>() : z.dump();
    JointComponent jc{number(field(c, "weight"), "weight"),
                      distribution_from_json(field(c, "distribution"))};
    if (!joint.emplace(std::move(label), std::move(jc)).second) fail("duplicate value of z");
  }
  return joint;
}

}  // namespace mixedsimplex::io
