#pragma once

#include "cohobs/bundle.hpp"
#include "cohobs/cech.hpp"
#include "cohobs/cup.hpp"
#include "cohobs/homology.hpp"
#include "cohobs/io.hpp"
#include "cohobs/manifolds.hpp"
#include "cohobs/obstruction.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace cohobs::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"generate",   "basis",         "homology",    "primitive",
                                              "pairing",    "chern",         "flatten",     "cs-grad-check",
                                              "obstruction", "sharpness",    "cech-delta",  "current"};
  return names;
}

/// Exit status for a library error: 2 for internal inconsistencies, 1 otherwise.
inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::VerdictInconsistent:
    case ErrorCode::SolverFailure:
    case ErrorCode::StarSolveFailure:
      return 2;
    default:
      return 1;
  }
}

inline std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

inline Json to_json(const Eigen::VectorXd& v) {
  auto out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

inline Json to_json(const Eigen::MatrixXd& m) {
  auto out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Eigen::VectorXd(m.row(i).transpose())));
  return out;
}

inline Json to_json(const std::vector<Integer>& v) {
  auto out = Json::array();
  for (const auto& x : v) out.push_back(detail::integer_to_json(x));
  return out;
}

/// Files read by one invocation, in order, with their digests.
class Inputs {
 public:
  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    auto text = ss.str();
    Json entry;
    entry["path"] = path;
    entry["sha256"] = sha256_hex(text);
    list_.push_back(std::move(entry));
    return text;
  }

  SimplicialComplex complex(const std::string& path) {
    const auto text = read(path);
    return annotate(path, [&] { return load_complex(text); });
  }
  IntCochain int_cochain(const std::string& path) {
    const auto text = read(path);
    return annotate(path, [&] { return load_int_cochain(text); });
  }
  RealCochain real_cochain(const std::string& path) {
    const auto text = read(path);
    return annotate(path, [&] { return load_real_cochain(text); });
  }

  const Json& json() const { return list_; }

 private:
  template <class F>
  static auto annotate(const std::string& path, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParseError) throw;
      throw Error(ErrorCode::ParseError, "'" + path + "': " + std::string(e.what()).substr(to_string(e.code()).size() + 2));
    }
  }

  Json list_ = Json::array();
};

inline Json flat_json(const FlatResult& f) {
  Json j;
  j["flat"] = f.flat;
  j["residual"] = f.residual;
  j["tolerance"] = f.tolerance;
  j["obstruction_coords"] = to_json(f.obstruction_coords);
  j["connection"] = cochain_to_json(f.A_star.values());
  return j;
}

inline void require_length(const SimplicialComplex& K, int degree, std::size_t size, const std::string& path) {
  if (degree < 0 || degree > K.dim())
    throw Error(ErrorCode::DegreeOutOfRange, "'" + path + "' has degree " + std::to_string(degree));
  if (size != K.count(degree))
    throw Error(ErrorCode::BaseMismatch, "'" + path + "' has " + std::to_string(size) + " values, complex has " +
                                             std::to_string(K.count(degree)) + " " + std::to_string(degree) +
                                             "-simplices");
}

/// Largest relative deviation of cs_gradient from central differences over
/// `samples` random connections.
inline Json cs_grad_check(const SimplicialComplex& K, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-4;
  double worst = 0.0;
  auto errors = Json::array();
  for (int s = 0; s < samples; ++s) {
    RealCochain a = zero_cochain<double>(K, 1);
    for (auto& x : a.values) x = u(rng);
    const auto grad = cs_gradient(K, Connection::from_real(a));
    double diff = 0.0;
    for (std::size_t e = 0; e < a.size(); ++e) {
      auto plus = a, minus = a;
      plus.values[e] += h;
      minus.values[e] -= h;
      const double fd = (cs_action(K, Connection::from_real(plus)) - cs_action(K, Connection::from_real(minus))) / (2 * h);
      diff = std::max(diff, std::abs(fd - grad.values[e]));
    }
    const double rel = diff / std::max(1.0, norm_inf(grad));
    errors.push_back(rel);
    worst = std::max(worst, rel);
  }
  Json j;
  j["samples"] = samples;
  j["seed"] = seed;
  j["step"] = h;
  j["relative_errors"] = std::move(errors);
  j["max_relative_error"] = worst;
  j["pass"] = worst <= 1e-6;
  return j;
}

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      std::find(commands().begin(), commands().end(), args[0]) == commands().end()) {
    err << "error: UNKNOWN_COMMAND: '" << args[0] << "'\n";
    return 1;
  }

  CLI::App app{"Cohomological obstructions for discrete U(1) Chern-Simons", "cohobs"};
  app.require_subcommand(1);
  app.fallthrough();
  Tolerance tol;
  std::string out_path;
  app.add_option("--tol", tol.rel, "relative tolerance")->capture_default_str();
  app.add_option("--abs-tol", tol.abs, "absolute tolerance floor")->capture_default_str();
  app.add_option("--out", out_path, "write the report to a file");

  std::string name, complex_path, cochain_path, gamma_path;
  int degree = -1;
  int index = -1;
  std::string ring = "real";
  int samples = 20;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> descent_seed;

  auto* generate = app.add_subcommand("generate", "emit a fixture triangulation");
  generate->add_option("name", name, "s3 | t3 | s1xs2 | rp3 | s2 | circle<n>")->required();

  auto* basis = app.add_subcommand("basis", "integral cohomology generators");
  basis->add_option("complex", complex_path)->required();
  basis->add_option("--degree", degree)->required();
  basis->add_option("--index", index, "emit one generator as a cochain document");
  bool torsion = false;
  basis->add_flag("--torsion", torsion, "index into the torsion generators");

  auto* homology = app.add_subcommand("homology", "cohomology group in one degree");
  homology->add_option("complex", complex_path)->required();
  homology->add_option("--degree", degree)->required();
  homology->add_option("--ring", ring)->check(CLI::IsMember({"int", "real"}))->capture_default_str();

  auto* primitive = app.add_subcommand("primitive", "global primitive or class coordinates");
  primitive->add_option("complex", complex_path)->required();
  primitive->add_option("cochain", cochain_path)->required();

  auto* pairing = app.add_subcommand("pairing", "Poincare pairing matrix");
  pairing->add_option("complex", complex_path)->required();
  pairing->add_option("--degree", degree)->required();

  auto* chern = app.add_subcommand("chern", "real and integral Chern class");
  chern->add_option("complex", complex_path)->required();
  chern->add_option("cocycle", cochain_path)->required();

  auto* flatten_cmd = app.add_subcommand("flatten", "least-squares flattening");
  flatten_cmd->add_option("complex", complex_path)->required();
  flatten_cmd->add_option("cocycle", cochain_path)->required();

  auto* grad = app.add_subcommand("cs-grad-check", "finite-difference check of the CS gradient");
  grad->add_option("complex", complex_path)->required();
  grad->add_option("--samples", samples)->capture_default_str();
  grad->add_option("--seed", seed)->capture_default_str();

  auto* obstruction = app.add_subcommand("obstruction", "obstruction pairings");
  obstruction->add_option("complex", complex_path)->required();
  obstruction->add_option("cocycle", cochain_path)->required();
  obstruction->add_option("--gamma", gamma_path, "closed 1-cochain; default is the H^1 basis");

  auto* sharpness = app.add_subcommand("sharpness", "flat connection iff all pairings vanish");
  sharpness->add_option("complex", complex_path)->required();
  sharpness->add_option("cocycle", cochain_path)->required();

  auto* cech = app.add_subcommand("cech-delta", "Cech-de Rham descent of a closed form");
  cech->add_option("complex", complex_path)->required();
  cech->add_option("cochain", cochain_path)->required();
  cech->add_option("--seed", descent_seed, "randomize local primitives");

  auto* current = app.add_subcommand("current", "globality of a locally exact current");
  current->add_option("complex", complex_path)->required();
  current->add_option("cochain", cochain_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: BAD_FLAG: " << e.what() << "\n";
    return 1;
  }

  try {
    Inputs inputs;
    std::optional<Json> plain;
    Json result;
    auto* cmd = app.get_subcommands().front();

    if (cmd == generate) {
      plain = complex_to_json(cohobs::generate(name));
    } else if (cmd == basis) {
      const auto K = inputs.complex(complex_path);
      const auto b = integral_cohomology_basis(K, degree);
      const auto& list = torsion ? b->torsion_generators : b->generators;
      if (index >= 0) {
        if (static_cast<std::size_t>(index) >= list.size())
          throw Error(ErrorCode::BadParameter, "--index " + std::to_string(index) + " but only " +
                                                   std::to_string(list.size()) + " generators");
        plain = cochain_to_json(list[index]);
      } else {
        result["degree"] = degree;
        auto gens = Json::array();
        for (const auto& g : b->generators) gens.push_back(cochain_to_json(g));
        result["generators"] = std::move(gens);
        result["torsion"] = to_json(b->torsion);
        auto tgens = Json::array();
        for (const auto& g : b->torsion_generators) tgens.push_back(cochain_to_json(g));
        result["torsion_generators"] = std::move(tgens);
      }
    } else if (cmd == homology) {
      const auto K = inputs.complex(complex_path);
      const auto r = ring == "int" ? Ring::Int : Ring::Real;
      const auto g = homology_groups(K, degree, r);
      const auto h = chain_homology_groups(K, degree, r);
      result["degree"] = degree;
      result["ring"] = ring;
      result["betti"] = g.betti;
      result["torsion"] = to_json(g.torsion);
      result["chain_homology"] = {{"betti", h.betti}, {"torsion", to_json(h.torsion)}};
    } else if (cmd == primitive) {
      const auto K = inputs.complex(complex_path);
      const auto w = inputs.real_cochain(cochain_path);
      require_length(K, w.degree, w.size(), cochain_path);
      const auto p = find_primitive(K, w, tol);
      result["degree"] = w.degree;
      result["exact"] = p.primitive.has_value();
      result["class_coordinates"] = to_json(p.class_coordinates);
      result["residual"] = p.residual;
      result["primitive"] = p.primitive ? cochain_to_json(*p.primitive) : Json();
    } else if (cmd == pairing) {
      const auto K = inputs.complex(complex_path);
      const auto m = poincare_pairing_matrix(K, degree);
      result["degree"] = m.degree;
      result["codegree"] = m.codegree;
      result["matrix"] = to_json(m.values);
      result["singular_values"] = to_json(m.singular_values);
      result["nondegenerate"] = m.nondegenerate;
    } else if (cmd == chern) {
      const auto K = inputs.complex(complex_path);
      auto c = inputs.int_cochain(cochain_path);
      require_length(K, c.degree, c.size(), cochain_path);
      const auto bundle = make_bundle(K, std::move(c));
      const auto coords = class_coordinates(K, to_real(bundle.c));
      auto free = Json::array();
      for (Eigen::Index i = 0; i < coords.size(); ++i) free.push_back(static_cast<long long>(std::llround(coords[i])));
      result["real_class"] = to_json(real_chern_class(bundle));
      result["integral"] = {{"free_coordinates", std::move(free)},
                            {"torsion_group", to_json(integral_cohomology_basis(K, 2)->torsion)},
                            {"nonzero", !integrally_exact(K, bundle.c)}};
    } else if (cmd == flatten_cmd) {
      const auto K = inputs.complex(complex_path);
      auto c = inputs.int_cochain(cochain_path);
      require_length(K, c.degree, c.size(), cochain_path);
      result = flat_json(flatten(make_bundle(K, std::move(c)), tol));
    } else if (cmd == grad) {
      const auto K = inputs.complex(complex_path);
      result = cs_grad_check(K, samples, seed);
    } else if (cmd == obstruction) {
      const auto K = inputs.complex(complex_path);
      auto c = inputs.int_cochain(cochain_path);
      require_length(K, c.degree, c.size(), cochain_path);
      const auto bundle = make_bundle(K, std::move(c));
      const auto flat = flatten(bundle, tol);
      std::vector<VerticalSymmetry> syms;
      if (!gamma_path.empty()) {
        auto g = inputs.real_cochain(gamma_path);
        require_length(K, g.degree, g.size(), gamma_path);
        syms.push_back(symmetry_from_oneform(K, std::move(g), gamma_path, tol));
      } else {
        const auto h1 = cohomology_basis_real(K, 1);
        for (std::size_t i = 0; i < h1->size(); ++i)
          syms.push_back({h1->representatives[i], "H^1 basis element " + std::to_string(i)});
      }
      auto rows = Json::array();
      bool obstructed = false;
      for (const auto& s : syms) {
        const double p = obstruction_pairing(K, s, bundle, flat.A_star);
        const double t = pairing_tolerance(K, s.gamma, flat.tolerance);
        obstructed = obstructed || std::abs(p) > t;
        Json row;
        row["gamma"] = s.provenance;
        row["pairing"] = p;
        row["tolerance"] = t;
        row["class_coordinates"] = to_json(obstruction_class(K, s, bundle, flat.A_star));
        rows.push_back(std::move(row));
      }
      result["flat"] = flat.flat;
      result["pairings"] = std::move(rows);
      result["obstructed"] = obstructed;
    } else if (cmd == sharpness) {
      const auto K = inputs.complex(complex_path);
      auto c = inputs.int_cochain(cochain_path);
      require_length(K, c.degree, c.size(), cochain_path);
      const auto v = sharpness_check(K, make_bundle(K, std::move(c)), tol, cochain_path);
      result["bundle_id"] = v.bundle_id;
      result["flat_exists"] = v.flat_exists;
      if (v.witness) {
        result["witness"] = {{"gamma", v.witness->symmetry.provenance},
                             {"basis_index", v.witness->basis_index},
                             {"pairing", v.witness->pairing},
                             {"tolerance", v.witness->tolerance}};
      } else {
        result["witness"] = nullptr;
      }
      result["pairings"] = v.all_pairings;
      result["pairing_tolerances"] = v.pairing_tolerances;
      result["predicted_pairings"] = to_json(v.predicted_pairings);
      result["flat"] = flat_json(v.flat);
    } else if (cmd == cech) {
      const auto K = inputs.complex(complex_path);
      const auto w = inputs.real_cochain(cochain_path);
      require_length(K, w.degree, w.size(), cochain_path);
      const auto cover = star_cover(K);
      const auto cls = connecting_delta(cover, w, tol, descent_seed);
      const auto simplicial = class_coordinates(K, w);
      const double diff = simplicial.size() ? (cls.coordinates - simplicial).cwiseAbs().maxCoeff() : 0.0;
      result["degree"] = cls.degree;
      result["nerve_cocycle"] = cls.cocycle.values;
      result["constancy_defect"] = cls.constancy_defect;
      result["cocycle_defect"] = cls.cocycle_defect;
      result["nerve_sign"] = nerve_sign(cls.degree);
      result["nerve_coordinates"] = to_json(cls.nerve_coordinates);
      result["coordinates"] = to_json(cls.coordinates);
      result["simplicial_coordinates"] = to_json(simplicial);
      result["max_difference"] = diff;
      result["agree"] = diff <= 1e-8;
    } else if (cmd == current) {
      const auto K = inputs.complex(complex_path);
      const auto w = inputs.real_cochain(cochain_path);
      require_length(K, w.degree, w.size(), cochain_path);
      const auto r = current_globality(star_cover(K), w, tol);
      result["degree"] = w.degree;
      result["cech_coordinates"] = to_json(r.cech.coordinates);
      result["simplicial_coordinates"] = to_json(r.simplicial_coordinates);
      result["cech_vanishes"] = r.cech_vanishes;
      result["primitive_found"] = r.primitive_found;
      result["globalizable"] = r.globalizable;
      result["current"] = r.current ? cochain_to_json(*r.current) : Json();
    }

    Json doc;
    if (plain) {
      doc = std::move(*plain);
    } else {
      std::string echo;
      for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
      doc["command"] = echo;
      doc["inputs"] = inputs.json();
      doc["tolerance"] = {{"rel", tol.rel}, {"abs", tol.abs}};
      doc["result"] = std::move(result);
    }
    const auto text = doc.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw Error(ErrorCode::FileNotFound, "cannot write '" + out_path + "'");
      file << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
}

}  // namespace cohobs::cli
