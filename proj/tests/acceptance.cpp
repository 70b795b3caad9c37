// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "povm/cli.hpp"
#include "povm/povm.hpp"

using namespace povm;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// A random element of a random valid set, so (element, state) is a physical pair.
PovmElement element_of_valid_set(gen::Rng& rng) {
  const PovmSet set = gen::povm_set(rng, 2 + static_cast<int>(rng() % 7));
  return set[rng() % set.size()];
}

Outcome oracle_equivalence() {
  gen::Rng rng(101);
  Stopwatch clock;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const PovmElement e = element_of_valid_set(rng);
    const BlochState s = gen::state(rng);
    const double bloch = 0.5 * (e.a + e.v.dot(s.r()));
    const double matrix = trace_product(element_to_matrix(e), bloch_to_density(s));
    worst = std::fmax(worst, std::fabs(bloch - matrix));
    worst = std::fmax(worst, std::fabs(outcome_probability(e, s) - std::clamp(matrix, 0.0, 1.0)));
  }
  const double t = clock.seconds();
  return {worst <= 1e-12 && t < 1.0, "max |diff| = " + num(worst) + ", " + num(t) + " s"};
}

Outcome normalization_and_completeness() {
  gen::Rng rng(102);
  double worst_sum = 0.0;
  int agree = 0;
  int total = 0;
  auto oracle_verdict = [](const PovmSet& set) {
    std::vector<HermitianMat2> mats;
    bool positive = true;
    for (const auto& e : set) {
      mats.push_back(element_to_matrix(e));
      positive = positive && is_positive(mats.back());
    }
    return positive && completeness(mats);
  };
  for (int i = 0; i < 1000; ++i) {
    const PovmSet set = gen::povm_set(rng, 2 + i % 7);
    double sum = 0.0;
    for (double p : outcome_distribution(set, gen::state(rng))) sum += p;
    worst_sum = std::fmax(worst_sum, std::fabs(sum - 1.0));
    ++total;
    agree += oracle_verdict(set) == validate_set(set).valid;

    // Same set with its closure broken: both routes must reject it.
    std::vector<PovmElement> els = set.elements();
    els[i % els.size()].v = els[i % els.size()].v * 0.999;
    els[(i + 1) % els.size()].a += 1e-4;
    const PovmSet broken(els);
    ++total;
    agree += oracle_verdict(broken) == validate_set(broken).valid;
  }
  return {worst_sum <= 1e-9 && agree == total,
          "max |Σp - 1| = " + num(worst_sum) + ", verdicts agree " + std::to_string(agree) + "/" +
              std::to_string(total)};
}

Outcome decomposition_exactness() {
  gen::Rng rng(103);
  double worst_matrix = 0.0;
  double worst_prob = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = gen::uniform(rng, 0.05, 1.0);
    const PovmElement e{a, gen::unit_vector(rng) * (a * gen::uniform(rng, 0.0, 0.95))};
    const Rank1Decomposition d = decompose_rank1(e);
    const HermitianMat2 sum = element_to_matrix(d.major) + element_to_matrix(d.minor);
    worst_matrix = std::fmax(worst_matrix, max_abs_diff(sum, element_to_matrix(e)));
    const BlochState s = gen::state(rng);
    worst_prob = std::fmax(worst_prob, std::fabs(outcome_probability(e, s) - outcome_probability(d.major, s) -
                                                 outcome_probability(d.minor, s)));
  }
  return {worst_matrix <= 1e-12 && worst_prob <= 1e-12,
          "max entry diff = " + num(worst_matrix) + ", max |ΔP| = " + num(worst_prob)};
}

Outcome usd_closed_form() {
  double worst = 0.0;
  for (double alpha : {pi / 6, pi / 4, pi / 2, 2 * pi / 3, 5 * pi / 6, pi}) {
    worst = std::fmax(worst, std::fabs(usd_success_probability(alpha) - (1.0 - std::cos(alpha / 2))));
  }
  const double right = usd_success_probability(pi / 2);
  const double full = usd_success_probability(pi);
  const bool pass = worst <= 1e-12 && std::fabs(right - 0.29289321881345254) <= 1e-10 &&
                    std::fabs(full - 1.0) <= 1e-12;
  return {pass, "max |P - (1 - cos α/2)| = " + num(worst) + ", P(π/2) = " + std::to_string(right) +
                    ", P(π) = " + num(full)};
}

Outcome error_free_property() {
  gen::Rng rng(105);
  double worst_wrong = 0.0;
  double worst_inconclusive = 0.0;
  for (int i = 0; i < 100; ++i) {
    const UsdDesign d = design_usd(gen::unit_vector(rng), gen::unit_vector(rng));
    const ErrorFreeReport rep = verify_error_free(d);
    worst_wrong = std::fmax(worst_wrong, std::fmax(rep.p_phi_detector_on_psi, rep.p_psi_detector_on_phi));
    worst_inconclusive =
        std::fmax(worst_inconclusive, std::fabs(rep.p_inconclusive_on_psi - rep.p_inconclusive_on_phi));
  }
  return {worst_wrong <= 1e-12 && worst_inconclusive <= 1e-12,
          "max P(wrong) = " + num(worst_wrong) + ", max |ΔP(?)| = " + num(worst_inconclusive)};
}

Outcome optimality_check() {
  Stopwatch clock;
  double worst = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double alpha = pi * k / 20.0;
    const GridOptimum g = brute_force_optimal_a(alpha, 1e-5);
    worst = std::fmax(worst, std::fabs(g.a_best - 1.0 / (1.0 + std::cos(alpha / 2))));
  }
  const double t = clock.seconds();
  return {worst <= 1e-4 && t < 5.0, "max |a_grid - a| = " + num(worst) + ", " + num(t) + " s"};
}

Outcome sampler_statistics() {
  Stopwatch clock;
  const UsdDesign d = design_usd(Vec3::unit_z(), Vec3::unit_x());
  const std::uint64_t n = 1000000;
  const SampleReport rep = sample_outcomes(d.povm, BlochState(d.r_psi), n, 20261014);
  const double t = clock.seconds();
  const double p = 0.292893218813452;
  const double bound = 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  const double dev = std::fabs(rep.frequencies[kDetectPsi] - p);
  return {dev <= bound && rep.counts[kDetectPhi] == 0 && t < 5.0,
          "|freq - p| = " + num(dev) + " (bound " + num(bound) + "), forbidden count " +
              std::to_string(rep.counts[kDetectPhi]) + ", " + num(t) + " s"};
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, CliContext{in, out, err, false});
  return {code, out.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome cli_contract() {
  const fs::path data = POVM_TEST_DATA_DIR;
  const std::string trine = (data / "trine.json").string();
  std::vector<std::string> failures;

  const CliRun v = cli({"validate", "--povm", trine});
  if (v.code != 0 || v.out.find("valid, rank-1 set, Σa=2") == std::string::npos) failures.push_back("validate");

  const CliRun u = cli({"usd", "--alpha", "1.5707963"});
  if (u.code != 0 || u.out.find("0.585786") == std::string::npos || u.out.find("0.292893") == std::string::npos) {
    failures.push_back("usd");
  }

  const CliRun p = cli({"prob", "--json", "--povm", trine, "--state", "(0,0,0)"});
  bool prob_ok = p.code == 0;
  if (prob_ok) {
    const auto probs = nlohmann::json::parse(p.out)["probabilities"];
    const PovmSet set = *parse_document(slurp(trine)).povm;
    prob_ok = probs.size() == set.size();
    for (std::size_t i = 0; prob_ok && i < set.size(); ++i) {
      prob_ok = std::fabs(probs[i].get<double>() - set[i].a / 2) <= 1e-12;
    }
  }
  if (!prob_ok) failures.push_back("prob");

  int corpus = 0;
  for (const auto& entry : fs::directory_iterator(data)) {
    if (entry.path().extension() != ".json") continue;
    const Document doc = parse_document(slurp(entry.path()));
    const std::string canonical = serialize_document(doc);
    if (!(parse_document(canonical) == doc) || serialize_document(parse_document(canonical)) != canonical) {
      failures.push_back("round-trip " + entry.path().filename().string());
    }
    ++corpus;
  }
  if (corpus < 10) failures.push_back("corpus has only " + std::to_string(corpus) + " documents");

  FigureSpec fig = povm_figure(*parse_document(slurp(trine)).povm);
  const std::string svg = render_svg(fig);
  static const std::regex line(R"re(<line class="arrow[^"]*" x1="[-0-9.]+" y1="[-0-9.]+" x2="([-0-9.]+)" y2="([-0-9.]+)")re");
  std::vector<std::pair<double, double>> tips;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line); it != std::sregex_iterator(); ++it) {
    tips.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
  }
  bool svg_ok = tips.size() == 3;
  const double cx = 0.5 * fig.width;
  const double cy = 0.5 * fig.height;
  for (std::size_t k = 0; svg_ok && k < 3; ++k) {
    const Vec3& v = fig.arrows[k].v;
    svg_ok = std::fabs(tips[k].first - (cx + fig.radius * v.x())) <= 0.5 &&
             std::fabs(tips[k].second - (cy - fig.radius * v.z())) <= 0.5;
  }
  if (!svg_ok) failures.push_back("svg (" + std::to_string(tips.size()) + " arrows)");

  std::string detail = "3 subcommands, " + std::to_string(corpus) + " documents, " +
                       std::to_string(tips.size()) + " SVG arrows";
  for (const auto& f : failures) detail += "; FAILED " + f;
  return {failures.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 oracle equivalence", oracle_equivalence},
      {"2 completeness/normalization", normalization_and_completeness},
      {"3 decomposition exactness", decomposition_exactness},
      {"4 USD closed form", usd_closed_form},
      {"5 error-free property", error_free_property},
      {"6 optimality check", optimality_check},
      {"7 sampler statistics", sampler_statistics},
      {"8 CLI contract", cli_contract},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
