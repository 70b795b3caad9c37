#pragma once

// Command-line front end. run_cli is the whole program minus process
// plumbing, so tests drive it in-process with string streams.
//
//   validate --povm FILE
//   prob     --povm FILE --state STATE
//   decompose --povm FILE [--index I]
//   usd      (--alpha A | --psi STATE --phi STATE) [--degrees] [--check-step H] [--out FILE]
//   sample   --povm FILE --state STATE --n N --seed SEED
//   render   (--povm FILE [--decompose I] | --usd A) [--degrees] [--plane AXES] [--size PX] [--out FILE]
//
// FILE may be "-" for stdin. STATE is "x,y,z", "(x,y,z)" or the name of a
// state in the --povm document. Every subcommand accepts --json.
// Exit codes: 0 ok/valid, 1 domain-invalid input, 2 usage or parse error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "povm/bloch.hpp"
#include "povm/discrimination.hpp"
#include "povm/document.hpp"
#include "povm/error.hpp"
#include "povm/hermitian.hpp"
#include "povm/sampler.hpp"
#include "povm/svg.hpp"

namespace povm {

struct CliContext {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitUsage = 2 };

namespace cli_detail {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Vec3 parse_vec3_literal(std::string_view text) {
  std::string cleaned;
  for (char ch : text) {
    if (ch != '(' && ch != ')' && ch != '[' && ch != ']' && ch != ' ' && ch != '\t') cleaned += ch;
  }
  std::array<double, 3> xyz{};
  std::size_t pos = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t comma = k < 2 ? cleaned.find(',', pos) : cleaned.size();
    if (comma == std::string::npos) throw UsageError("expected three comma-separated numbers: " + std::string(text));
    const char* first = cleaned.data() + pos;
    const char* last = cleaned.data() + comma;
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, xyz[k]);
    if (res.ec != std::errc{} || res.ptr != last) {
      throw UsageError("not a number in vector literal: " + std::string(text));
    }
    pos = comma + 1;
  }
  return {xyz[0], xyz[1], xyz[2]};
}

inline std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open " + path);
  buf << file.rdbuf();
  return buf.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

inline Document load_document(const std::string& path, std::istream& in) {
  return parse_document(read_input(path, in));
}

inline const PovmSet& require_povm(const Document& doc, const std::string& path) {
  if (!doc.povm) throw UsageError(path + " has no \"povm\" section");
  return *doc.povm;
}

inline BlochState resolve_state(const std::string& spec, const Document* doc) {
  if (doc != nullptr) {
    if (const BlochState* named = doc->find_state(spec)) return *named;
  }
  return BlochState(parse_vec3_literal(spec));
}

inline json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline std::string paint(const CliContext& ctx, std::string_view text, bool good) {
  if (!ctx.color) return std::string(text);
  return std::string(good ? "\x1b[32m" : "\x1b[31m") + std::string(text) + "\x1b[0m";
}

inline std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  // Values that round to zero print without a sign.
  if (std::fabs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::string fmt_vec(const Vec3& v) {
  return "(" + fixed(v.x()) + ", " + fixed(v.y()) + ", " + fixed(v.z()) + ")";
}

inline double angle_arg(double value, bool degrees) {
  return degrees ? value * std::numbers::pi / 180.0 : value;
}

inline void print_elements(std::ostream& os, const PovmSet& set) {
  os << std::left << std::setw(4) << "#" << std::setw(12) << "a" << std::setw(40) << "v"
     << "|v|\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    os << std::left << std::setw(4) << i << std::setw(12) << fixed(set[i].a) << std::setw(40)
       << fmt_vec(set[i].v) << fixed(set[i].v.norm()) << '\n';
  }
}

// --- subcommands -----------------------------------------------------------

inline int cmd_validate(const CliContext& ctx, const std::string& path, bool as_json) {
  const Document doc = load_document(path, ctx.in);
  const PovmSet& set = require_povm(doc, path);
  const SetReport rep = validate_set(set);
  std::vector<HermitianMat2> mats;
  for (const auto& e : set) mats.push_back(element_to_matrix(e));
  const bool oracle_complete = completeness(mats);

  if (as_json) {
    json j;
    j["valid"] = rep.valid;
    j["summary"] = rep.summary();
    j["all_rank1"] = rep.all_rank1;
    j["vector_sum"] = vec_json(rep.vector_sum);
    j["weight_sum"] = rep.weight_sum;
    j["length_sum"] = rep.length_sum;
    j["checks"] = {{"elements_positive", rep.elements_positive},
                   {"vectors_close", rep.vectors_close},
                   {"weights_close", rep.weights_close},
                   {"lengths_close", rep.lengths_close},
                   {"oracle_complete", oracle_complete}};
    json els = json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
      const ElementReport& er = rep.elements[i];
      els.push_back({{"a", set[i].a},
                     {"v", vec_json(set[i].v)},
                     {"positive", er.positive},
                     {"rank", to_string(er.rank)},
                     {"eigenvalues", json::array({er.eigenvalue_lo, er.eigenvalue_hi})},
                     {"reason", er.reason}});
    }
    j["elements"] = std::move(els);
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << paint(ctx, rep.summary(), rep.valid) << '\n';
    ctx.out << std::left << std::setw(4) << "#" << std::setw(12) << "a" << std::setw(12) << "|v|"
            << std::setw(8) << "rank" << std::setw(24) << "eigenvalues"
            << "positive\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
      const ElementReport& er = rep.elements[i];
      ctx.out << std::left << std::setw(4) << i << std::setw(12) << fixed(set[i].a) << std::setw(12)
              << fixed(set[i].v.norm()) << std::setw(8) << to_string(er.rank) << std::setw(24)
              << (fixed(er.eigenvalue_lo) + ", " + fixed(er.eigenvalue_hi))
              << (er.positive ? "yes" : "no") << '\n';
    }
    ctx.out << "Σv = " << fmt_vec(rep.vector_sum) << "  Σa = " << fixed(rep.weight_sum)
            << "  Σ|v| = " << fixed(rep.length_sum) << '\n';
    ctx.out << "matrix completeness: " << (oracle_complete ? "yes" : "no") << '\n';
  }
  return rep.valid ? kExitOk : kExitInvalid;
}

inline int cmd_prob(const CliContext& ctx, const std::string& path, const std::string& state_spec,
                    bool as_json) {
  const Document doc = load_document(path, ctx.in);
  const PovmSet& set = require_povm(doc, path);
  const BlochState st = resolve_state(state_spec, &doc);
  const std::vector<double> probs = outcome_distribution(set, st);
  double total = 0.0;
  for (double p : probs) total += p;
  if (as_json) {
    json j;
    j["state"] = vec_json(st.r());
    j["probabilities"] = probs;
    j["sum"] = total;
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "state r = " << fmt_vec(st.r()) << '\n';
    ctx.out << std::left << std::setw(4) << "#" << std::setw(12) << "a" << "P\n";
    for (std::size_t i = 0; i < probs.size(); ++i) {
      ctx.out << std::left << std::setw(4) << i << std::setw(12) << fixed(set[i].a) << fixed(probs[i]) << '\n';
    }
    ctx.out << "sum = " << fixed(total) << '\n';
  }
  return kExitOk;
}

inline int cmd_decompose(const CliContext& ctx, const std::string& path, std::optional<std::size_t> index,
                         bool as_json) {
  const Document doc = load_document(path, ctx.in);
  const PovmSet& set = require_povm(doc, path);
  std::vector<std::size_t> which;
  if (index) {
    if (*index >= set.size()) throw UsageError("--index out of range");
    which.push_back(*index);
  } else {
    for (std::size_t i = 0; i < set.size(); ++i) which.push_back(i);
  }
  json parts = json::array();
  std::ostringstream text;
  for (std::size_t i : which) {
    if (classify_rank(set[i]) == Rank::Zero) {
      if (index) throw Error(ErrorCode::ZeroElement, "element " + std::to_string(i) + " has zero weight");
      parts.push_back({{"index", i}, {"zero", true}});
      text << "element " << i << ": zero element, nothing to decompose\n";
      continue;
    }
    const Rank1Decomposition d = decompose_rank1(set[i]);
    parts.push_back({{"index", i},
                     {"axis", vec_json(d.axis)},
                     {"eigen_weights", json::array({d.lambda1, d.lambda2})},
                     {"major", {{"a", d.major.a}, {"v", vec_json(d.major.v)}}},
                     {"minor", {{"a", d.minor.a}, {"v", vec_json(d.minor.v)}}}});
    text << "element " << i << ": axis " << fmt_vec(d.axis) << ", λ = (" << fixed(d.lambda1) << ", "
         << fixed(d.lambda2) << ")\n"
         << "  major a = " << fixed(d.major.a) << "  v = " << fmt_vec(d.major.v) << '\n'
         << "  minor a = " << fixed(d.minor.a) << "  v = " << fmt_vec(d.minor.v) << '\n';
  }
  if (as_json) {
    ctx.out << json{{"decompositions", std::move(parts)}}.dump(2) << '\n';
  } else {
    ctx.out << text.str();
  }
  return kExitOk;
}

inline Vec3 state_at_angle(double alpha) { return {std::sin(alpha), 0.0, std::cos(alpha)}; }

inline UsdDesign design_from_args(std::optional<double> alpha, bool degrees, const std::string& psi,
                                  const std::string& phi) {
  if (alpha) {
    const double rad = angle_arg(*alpha, degrees);
    if (!(rad >= 0.0 && rad <= std::numbers::pi + tol::angle)) throw UsageError("alpha must lie in [0, pi]");
    return design_usd(Vec3::unit_z(), state_at_angle(std::fmin(rad, std::numbers::pi)));
  }
  if (psi.empty() || phi.empty()) throw UsageError("give --alpha or both --psi and --phi");
  return design_usd(parse_vec3_literal(psi), parse_vec3_literal(phi));
}

inline int cmd_usd(const CliContext& ctx, const UsdDesign& d, std::optional<double> check_step,
                   const std::string& out_path, bool as_json) {
  const ErrorFreeReport ver = verify_error_free(d);
  const bool valid = validate_set(d.povm).valid;
  std::optional<GridOptimum> grid;
  if (check_step) {
    if (!(*check_step > 0.0 && *check_step <= 1.0)) throw UsageError("--check-step must lie in (0, 1]");
    if (d.degenerate) throw UsageError("--check-step needs two distinct states");
    grid = brute_force_optimal_a(d.alpha, *check_step);
  }

  if (!out_path.empty()) {
    Document doc;
    doc.states = std::vector<NamedState>{{"psi", BlochState(d.r_psi)}, {"phi", BlochState(d.r_phi)}};
    doc.povm = d.povm;
    write_output(out_path, serialize_document(doc), ctx.out);
  }

  if (as_json) {
    json j;
    j["alpha"] = d.alpha;
    j["r_psi"] = vec_json(d.r_psi);
    j["r_phi"] = vec_json(d.r_phi);
    j["a"] = d.a;
    j["a_inconclusive"] = d.a_inconclusive;
    j["p_success"] = d.p_success;
    j["degenerate"] = d.degenerate;
    j["povm"] = povm_to_json(d.povm);
    j["valid"] = valid;
    j["verification"] = {{"error_free", ver.error_free},
                         {"symmetric", ver.symmetric},
                         {"uninformative", ver.uninformative},
                         {"p_inconclusive", ver.p_inconclusive_on_psi}};
    if (grid) j["grid"] = {{"step", *check_step}, {"a_best", grid->a_best}, {"p_best", grid->p_best}};
    if (out_path != "-") ctx.out << j.dump(2) << '\n';
  } else if (out_path != "-") {
    ctx.out << "alpha      = " << fixed(d.alpha) << " rad\n"
            << "a          = " << fixed(d.a) << '\n'
            << "a_?        = " << fixed(d.a_inconclusive) << '\n'
            << "p_success  = " << fixed(d.p_success) << '\n';
    if (d.degenerate) ctx.out << paint(ctx, "warning: identical states, nothing to discriminate", false) << '\n';
    print_elements(ctx.out, d.povm);
    ctx.out << "error-free: " << (ver.error_free ? "yes" : "no") << "  symmetric: "
            << (ver.symmetric ? "yes" : "no") << "  inconclusive uninformative: "
            << (ver.uninformative ? "yes" : "no") << '\n';
    if (grid) {
      ctx.out << "grid optimum (step " << *check_step << "): a = " << fixed(grid->a_best)
              << ", p = " << fixed(grid->p_best) << '\n';
    }
  }
  return (ver.passed && valid) ? kExitOk : kExitInvalid;
}

inline int cmd_sample(const CliContext& ctx, const std::string& path, const std::string& state_spec,
                      std::uint64_t n, std::uint64_t seed, bool as_json) {
  const Document doc = load_document(path, ctx.in);
  const PovmSet& set = require_povm(doc, path);
  const BlochState st = resolve_state(state_spec, &doc);
  if (n == 0) throw UsageError("--n must be positive");
  const SampleReport rep = sample_outcomes(set, st, n, seed);
  if (as_json) {
    json j;
    j["n"] = rep.n;
    j["seed"] = rep.seed;
    j["counts"] = rep.counts;
    j["frequencies"] = rep.frequencies;
    j["expected"] = rep.expected;
    j["max_abs_deviation"] = rep.max_abs_deviation;
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "n = " << rep.n << "  seed = " << rep.seed << '\n';
    ctx.out << std::left << std::setw(4) << "#" << std::setw(12) << "count" << std::setw(12) << "freq"
            << "expected\n";
    for (std::size_t i = 0; i < rep.counts.size(); ++i) {
      ctx.out << std::left << std::setw(4) << i << std::setw(12) << rep.counts[i] << std::setw(12)
              << fixed(rep.frequencies[i]) << fixed(rep.expected[i]) << '\n';
    }
    ctx.out << "max |freq - P| = " << fixed(rep.max_abs_deviation) << '\n';
  }
  return kExitOk;
}

inline Plane parse_plane(const std::string& spec) {
  const auto semi = spec.find(';');
  if (semi == std::string::npos) throw UsageError("--plane expects \"hx,hy,hz;vx,vy,vz\"");
  Plane p;
  p.horizontal = parse_vec3_literal(spec.substr(0, semi));
  p.vertical = parse_vec3_literal(spec.substr(semi + 1));
  p.horizontal_label = "e1";
  p.vertical_label = "e2";
  try {
    p.check();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return p;
}

struct RenderArgs {
  std::string povm_path;
  std::optional<std::size_t> decompose_index;
  std::optional<double> usd_alpha;
  bool degrees = false;
  std::string plane;
  int size = 400;
  std::string out_path;
};

inline int cmd_render(const CliContext& ctx, const RenderArgs& args) {
  FigureSpec fig;
  if (args.usd_alpha) {
    fig = usd_figure(design_from_args(args.usd_alpha, args.degrees, "", ""));
  } else if (!args.povm_path.empty()) {
    const Document doc = load_document(args.povm_path, ctx.in);
    const PovmSet& set = require_povm(doc, args.povm_path);
    if (args.decompose_index) {
      if (*args.decompose_index >= set.size()) throw UsageError("--decompose index out of range");
      fig = decomposition_figure(set[*args.decompose_index]);
    } else {
      std::vector<std::pair<std::string, BlochState>> states;
      if (doc.states) {
        for (const auto& s : *doc.states) states.emplace_back(s.name, s.state);
      }
      fig = povm_figure(set, states);
    }
  } else {
    throw UsageError("render needs --povm or --usd");
  }
  if (args.size < 64) throw UsageError("--size must be at least 64");
  if (!args.plane.empty()) fig.plane = parse_plane(args.plane);
  fig.width = fig.height = args.size;
  fig.radius = 0.375 * args.size;
  fit_radius(fig);
  write_output(args.out_path, render_svg(fig), ctx.out);
  return kExitOk;
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    default:
      return kExitInvalid;
  }
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, const CliContext& ctx) {
  using namespace cli_detail;

  CLI::App app{"Bloch-vector calculus for qubit POVMs", "povm"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON output");

  std::string povm_path;
  std::string state_spec;

  auto* validate = app.add_subcommand("validate", "Check that a POVM document describes a measurement");
  validate->add_option("--povm", povm_path, "POVM document (- for stdin)")->required();
  validate->add_flag("--json", as_json);

  auto* prob = app.add_subcommand("prob", "Outcome probabilities for a state");
  prob->add_option("--povm", povm_path, "POVM document (- for stdin)")->required();
  prob->add_option("--state", state_spec, "Bloch vector \"x,y,z\" or a state name from the document")->required();
  prob->add_flag("--json", as_json);

  std::optional<std::size_t> index;
  auto* decompose = app.add_subcommand("decompose", "Split elements into rank-1 parts");
  decompose->add_option("--povm", povm_path, "POVM document (- for stdin)")->required();
  decompose->add_option("--index", index, "Only this element");
  decompose->add_flag("--json", as_json);

  std::optional<double> alpha;
  bool degrees = false;
  std::string psi;
  std::string phi;
  std::optional<double> check_step;
  std::string out_path;
  auto* usd = app.add_subcommand("usd", "Optimal unambiguous discrimination of two pure states");
  auto* alpha_opt = usd->add_option("--alpha", alpha, "Bloch angle between the states (radians)");
  auto* psi_opt = usd->add_option("--psi", psi, "Bloch vector of the first state");
  auto* phi_opt = usd->add_option("--phi", phi, "Bloch vector of the second state");
  alpha_opt->excludes(psi_opt)->excludes(phi_opt);
  psi_opt->needs(phi_opt);
  phi_opt->needs(psi_opt);
  usd->add_flag("--degrees", degrees, "Angles are in degrees");
  usd->add_option("--check-step", check_step, "Also scan the detector weight on this grid");
  usd->add_option("--out", out_path, "Write the design as a document");
  usd->add_flag("--json", as_json);

  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  auto* sample = app.add_subcommand("sample", "Monte Carlo outcome frequencies");
  sample->add_option("--povm", povm_path, "POVM document (- for stdin)")->required();
  sample->add_option("--state", state_spec, "Bloch vector or a state name")->required();
  sample->add_option("--n", trials, "Number of trials")->required();
  sample->add_option("--seed", seed, "PRNG seed")->required();
  sample->add_flag("--json", as_json);

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "Draw a figure as SVG");
  auto* render_povm = render->add_option("--povm", render_args.povm_path, "POVM document (- for stdin)");
  render->add_option("--decompose", render_args.decompose_index, "Draw the decomposition of this element")
      ->needs(render_povm);
  render->add_option("--usd", render_args.usd_alpha, "Draw the discrimination design at this angle")
      ->excludes(render_povm);
  render->add_flag("--degrees", render_args.degrees, "Angles are in degrees");
  render->add_option("--plane", render_args.plane, "Projection axes \"hx,hy,hz;vx,vy,vz\"");
  render->add_option("--size", render_args.size, "Canvas size in pixels");
  render->add_option("--out", render_args.out_path, "SVG output file (default stdout)");
  render->add_flag("--json", as_json);

  std::vector<const char*> argv;
  argv.push_back("povm");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, ctx.out, ctx.err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(ctx, povm_path, as_json);
    if (prob->parsed()) return cmd_prob(ctx, povm_path, state_spec, as_json);
    if (decompose->parsed()) return cmd_decompose(ctx, povm_path, index, as_json);
    if (usd->parsed()) {
      return cmd_usd(ctx, design_from_args(alpha, degrees, psi, phi), check_step, out_path, as_json);
    }
    if (sample->parsed()) return cmd_sample(ctx, povm_path, state_spec, trials, seed, as_json);
    if (render->parsed()) return cmd_render(ctx, render_args);
  } catch (const UsageError& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    ctx.err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace povm
