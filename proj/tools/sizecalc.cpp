#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sizecalc/errors.hpp"
#include "sizecalc/parser.hpp"
#include "sizecalc/set_model.hpp"
#include "sizecalc/verifier.hpp"

using nlohmann::json;
namespace sc = sizecalc;

namespace {

constexpr int kDiagnosticExit = 64;

uint64_t default_horizon() {
  if (const char* env = std::getenv("SIZECALC_HORIZON")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return v;
    std::cerr << "warning: ignoring invalid SIZECALC_HORIZON\n";
  }
  return 10000;
}

// `size` accepts a full size expression or, for convenience, a bare set
// expression which it wraps in sigma(...)
sc::SizeValue eval_size(const std::string& text, const sc::ElabOptions& opts) {
  try {
    return sc::elaborate(*sc::parse_size_expr(text), opts);
  } catch (const sc::SyntaxError&) {
    auto set = sc::parse_set_expr(text);  // rethrows with the set diagnostic
    return {sc::elaborate(*set, opts).size_seq(), true};
  }
}

void emit_seq(const sc::Seq& s, uint64_t terms, const std::string& format) {
  if (format == "json") {
    std::cout << s.to_json(terms).dump(2) << "\n";
  } else {
    std::cout << s.to_csv(terms);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bolzano size sequences of countable sets"};
  app.require_subcommand(1);

  sc::ElabOptions opts;
  uint64_t terms = 20;
  uint64_t horizon = default_horizon();
  uint64_t seed = 0;
  std::string format = "csv";
  app.add_flag("--paper-primes", opts.paper_primes, "include 1 in P");
  app.add_flag("--noncanonical-q", opts.noncanonical_q,
               "use the coprime-pair encoding of Q+ (non-homogeneous)");

  std::string expr, lhs, rhs, rel, theorem;
  uint64_t upto = 5, trials = 200;
  std::string length = "1", starts;

  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--terms", terms, "number of leading terms")->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* size_cmd = app.add_subcommand("size", "print a size sequence prefix");
  size_cmd->add_option("expr", expr, "size or set expression")->required();
  add_output_flags(size_cmd);

  CLI::App* chi_cmd = app.add_subcommand("chi", "print a characteristic sequence prefix");
  chi_cmd->add_option("expr", expr, "set expression")->required();
  add_output_flags(chi_cmd);

  CLI::App* cmp_cmd = app.add_subcommand("compare", "decide a Frechet relation");
  cmp_cmd->add_option("relation", rel, "=F <F <=F <<F ~F")->required();
  cmp_cmd->add_option("lhs", lhs, "left size expression")->required();
  cmp_cmd->add_option("rhs", rhs, "right size expression")->required();
  cmp_cmd->add_option("--horizon", horizon, "scan/validation horizon");

  CLI::App* verify_cmd = app.add_subcommand("verify", "re-verify a theorem");
  verify_cmd->add_option("theorem", theorem, "theorem id (see list-theorems)")->required();
  verify_cmd->add_option("--horizon", horizon, "verification horizon");
  verify_cmd->add_option("--seed", seed, "seed for randomized suites");
  verify_cmd->add_option("--trials", trials, "trials for randomized suites");
  verify_cmd->add_option("--length", length, "interval length (homogeneity)");
  verify_cmd->add_option("--starts", starts, "comma-separated interval starts (homogeneity)");

  CLI::App* comp_cmd = app.add_subcommand("components", "list canonical components");
  comp_cmd->add_option("expr", expr, "set expression")->required();
  comp_cmd->add_option("--upto", upto, "last component index")->check(CLI::PositiveNumber);

  CLI::App* plot_cmd = app.add_subcommand("plotdata", "two-column n value output");
  plot_cmd->add_option("expr", expr, "size or set expression")->required();
  plot_cmd->add_option("--terms", terms, "number of rows")->check(CLI::PositiveNumber);

  app.add_subcommand("list-theorems", "list verifiable theorem ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (size_cmd->parsed()) {
      emit_seq(eval_size(expr, opts).seq, terms, format);
      return 0;
    }
    if (chi_cmd->parsed()) {
      emit_seq(sc::elaborate(*sc::parse_set_expr(expr), opts).char_seq(), terms, format);
      return 0;
    }
    if (cmp_cmd->parsed()) {
      auto r = sc::rel_from_string(rel);
      if (!r) {
        std::cerr << "unknown relation: " << rel << "\n";
        return kDiagnosticExit;
      }
      sc::Seq a = eval_size(lhs, opts).seq;
      sc::Seq b = eval_size(rhs, opts).seq;
      sc::Verdict v = sc::compare(*r, a, b, horizon);
      std::cout << v.to_json().dump(2) << "\n";
      return v.exit_code();
    }
    if (verify_cmd->parsed()) {
      sc::TheoremReport report;
      if (theorem == "homogeneity" && !starts.empty()) {
        std::vector<sc::Rat> ss;
        std::string cur;
        auto flush = [&] {
          if (cur.empty()) throw sc::SyntaxError(0, "empty start in --starts");
          sc::Rat r(cur);
          r.canonicalize();
          ss.push_back(r);
          cur.clear();
        };
        for (char c : starts) {
          if (c == ',') flush();
          else cur += c;
        }
        flush();
        sc::Rat len(length);
        len.canonicalize();
        report = sc::verify_homogeneity(len, ss, std::min<uint64_t>(horizon, 2000));
      } else if (theorem == "union-product-laws") {
        report = sc::verify_union_product_laws(trials, horizon, seed);
      } else {
        report = sc::verify_theorem(theorem, horizon, seed);
      }
      std::cout << report.to_json().dump(2) << "\n";
      return report.passed() ? 0 : 1;
    }
    if (comp_cmd->parsed()) {
      sc::CountableSet s = sc::elaborate(*sc::parse_set_expr(expr), opts);
      json out = json::array();
      for (uint64_t n = 1; n <= upto; ++n) out.push_back(s.component_json(n));
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (plot_cmd->parsed()) {
      sc::Seq s = eval_size(expr, opts).seq;
      for (uint64_t n = 1; n <= terms; ++n) std::cout << n << " " << sc::dec(s.at(n)) << "\n";
      return 0;
    }
    // list-theorems
    for (const auto& name : sc::theorem_names()) std::cout << name << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiagnosticExit;
  }
}
