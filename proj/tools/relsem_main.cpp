// relsem — batch front end: parse/print formulas, evaluate denotations with
// either engine, cross-check the two engines over interpretation sweeps, and
// run the identity audit.
//
// Exit codes: 0 success/agreement, 1 input error, 2 budget exceeded,
// 3 disagreement or FAIL verdict present.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relsem/relsem.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBudget = 2;
constexpr int kExitDisagreement = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw relsem::Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw relsem::Error("cannot write file: " + path);
  out << content;
}

struct Loaded {
  relsem::Signature sig;
  relsem::Interpretation interp;
};

Loaded load(const std::string& structure_path) {
  std::string text = read_file(structure_path);
  relsem::Signature sig = relsem::signature_of_structure(text);
  relsem::Interpretation interp = relsem::load_structure(text, sig);
  return {std::move(sig), std::move(interp)};
}

int cmd_parse(const std::string& sig_path, const std::string& formula_text) {
  relsem::Signature sig = relsem::parse_signature(read_file(sig_path));
  relsem::Formula f = relsem::parse_formula(formula_text, sig);
  std::cout << relsem::print_formula(f) << "\n";
  std::cout << "free:";
  for (const auto& v : relsem::free_vars(f)) std::cout << " " << v;
  std::cout << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& structure_path, const std::string& formula_text,
             const std::string& engine, std::uint64_t budget) {
  Loaded in = load(structure_path);
  relsem::Formula f = relsem::parse_formula(formula_text, in.sig);
  if (engine == "direct") {
    std::cout << relsem::render_table(
                     relsem::denote_formula(f, in.interp, budget))
              << "\n";
    return kExitOk;
  }
  if (engine == "comp") {
    std::cout << relsem::render_table(relsem::comp_denote(f, in.interp, budget))
              << "\n";
    return kExitOk;
  }
  relsem::Relation direct = relsem::denote_formula(f, in.interp, budget);
  relsem::Relation comp = relsem::comp_denote(f, in.interp, budget);
  if (direct == comp) {
    std::cout << relsem::render_table(comp) << "\n";
    std::cout << "ENGINES AGREE\n";
    return kExitOk;
  }
  std::cout << "ENGINES DISAGREE\n";
  std::cout << "direct:\n" << relsem::render_table(direct) << "\n";
  std::cout << "comp:\n" << relsem::render_table(comp) << "\n";
  return kExitDisagreement;
}

int cmd_eval_term(const std::string& structure_path,
                  const std::string& term_text, std::uint64_t budget) {
  Loaded in = load(structure_path);
  relsem::Term t = relsem::parse_term(term_text, in.sig);
  relsem::FunctionTable table = relsem::denote_term(t, in.interp, budget);
  for (const auto& [assignment, value] : table.graph()) {
    std::cout << relsem::render_inline(assignment) << "->" << value << "\n";
  }
  return kExitOk;
}

int cmd_check_equiv(const std::string& sig_path, const std::string& corpus_path,
                    bool exhaustive, std::uint64_t seed, std::uint64_t trials,
                    std::size_t max_universe, std::uint64_t budget) {
  relsem::Signature sig = relsem::parse_signature(read_file(sig_path));

  std::vector<relsem::Formula> corpus;
  std::vector<relsem::Term> terms;
  {
    std::string text = read_file(corpus_path);
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      bool blank = true;
      for (char c : line) blank &= (c == ' ' || c == '\t' || c == '\r');
      if (blank) continue;
      corpus.push_back(relsem::parse_formula(line, sig));
      for (const auto& t : relsem::all_subterms(corpus.back())) {
        terms.push_back(t);
      }
    }
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (corpus.empty()) throw relsem::Error("corpus file lists no formulas");

  std::uint64_t interps = 0;
  bool mismatch = false;
  auto check_one = [&](const relsem::Interpretation& interp) {
    ++interps;
    for (const auto& f : corpus) {
      relsem::Relation direct = relsem::denote_formula(f, interp, budget);
      relsem::Relation comp = relsem::comp_denote(f, interp, budget);
      if (direct != comp) {
        std::cout << "MISMATCH formula: " << relsem::print_formula(f) << "\n";
        std::cout << "interpretation: " << relsem::render_inline(interp)
                  << "\n";
        std::cout << "direct:\n" << relsem::render_table(direct) << "\n";
        std::cout << "comp:\n" << relsem::render_table(comp) << "\n";
        mismatch = true;
        return false;
      }
    }
    for (const auto& t : terms) {
      relsem::FunctionTable direct = relsem::denote_term(t, interp, budget);
      relsem::FunctionTable comp =
          relsem::comp_denote_term(t, interp, budget);
      if (direct != comp) {
        std::cout << "MISMATCH term: " << relsem::print_term(t) << "\n";
        std::cout << "interpretation: " << relsem::render_inline(interp)
                  << "\n";
        std::cout << "direct: " << relsem::render_inline(direct) << "\n";
        std::cout << "comp: " << relsem::render_inline(comp) << "\n";
        mismatch = true;
        return false;
      }
    }
    return true;
  };

  if (exhaustive) {
    for (std::size_t d = 1; d <= max_universe && !mismatch; ++d) {
      relsem::ElementSet universe;
      for (std::size_t i = 0; i < d; ++i) {
        universe.insert("e" + std::to_string(i));
      }
      relsem::for_each_interpretation(sig, universe, check_one);
    }
  } else {
    relsem::Xorshift64Star rng(seed);
    for (std::uint64_t i = 0; i < trials && !mismatch; ++i) {
      relsem::GeneratorConfig cfg;
      cfg.seed = rng.next();
      cfg.max_universe = max_universe;
      cfg.signature = sig;
      check_one(relsem::random_interpretation(cfg));
    }
  }
  if (mismatch) return kExitDisagreement;
  std::cout << "OK: " << corpus.size() << " formulas, " << terms.size()
            << " terms, " << interps << " interpretations, 0 mismatches\n";
  return kExitOk;
}

int cmd_audit(const std::string& claims_arg, const std::string& mode_arg,
              std::uint64_t budget, std::uint64_t seed,
              const std::string& out_path, const std::string& findings_path,
              bool scan_all, const relsem::audit::Caps& caps) {
  namespace audit = relsem::audit;
  std::set<audit::ClaimId> claims;
  if (claims_arg == "all") {
    claims.insert(audit::kAllClaims.begin(), audit::kAllClaims.end());
  } else {
    std::istringstream parts(claims_arg);
    std::string part;
    while (std::getline(parts, part, ',')) {
      if (!part.empty()) claims.insert(audit::claim_from_name(part));
    }
    if (claims.empty()) throw relsem::Error("no claims selected");
  }
  audit::Mode mode;
  if (mode_arg == "exhaustive") {
    mode = audit::Mode::Exhaustive;
  } else if (mode_arg == "random") {
    mode = audit::Mode::Random;
  } else {
    throw relsem::Error("unknown mode '" + mode_arg + "'");
  }

  audit::AuditReport report =
      audit::run_audit(claims, mode, budget, seed, caps, scan_all);
  for (const auto& r : report.results) {
    std::cerr << audit::claim_name(r.id) << ": " << r.checked
              << " instances in " << r.wall_ms << " ms";
    if (scan_all) std::cerr << ", " << r.violations << " violations";
    std::cerr << "\n";
  }

  std::string rendered = audit::render_report(report);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    write_file(out_path, rendered);
  }
  if (!findings_path.empty()) {
    write_file(findings_path, audit::render_findings(report));
  }
  for (const auto& r : report.results) {
    if (!r.pass) return kExitDisagreement;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model denotation engine and identity auditor"};
  app.require_subcommand(1);

  std::string sig_path, structure_path, formula_text, term_text, corpus_path;
  std::string engine = "both";
  std::uint64_t budget = relsem::kEvalBudget;

  auto* parse_cmd = app.add_subcommand("parse", "parse and reprint a formula");
  parse_cmd->add_option("--signature", sig_path, "signature file")->required();
  parse_cmd->add_option("--formula", formula_text, "formula text")->required();

  auto* eval_cmd = app.add_subcommand("eval", "print a formula's denotation");
  eval_cmd->add_option("--structure", structure_path, "structure file")
      ->required();
  eval_cmd->add_option("--formula", formula_text, "formula text")->required();
  eval_cmd->add_option("--engine", engine, "direct|comp|both (default both)");
  eval_cmd->add_option("--budget", budget, "enumeration budget");

  auto* term_cmd =
      app.add_subcommand("eval-term", "print a term's denotation table");
  term_cmd->add_option("--structure", structure_path, "structure file")
      ->required();
  term_cmd->add_option("--term", term_text, "term text")->required();
  term_cmd->add_option("--budget", budget, "enumeration budget");

  bool exhaustive = false;
  std::uint64_t seed = 42;
  std::uint64_t trials = 100;
  std::size_t max_universe = 2;
  auto* equiv_cmd = app.add_subcommand(
      "check-equiv", "cross-check the two engines over a formula corpus");
  equiv_cmd->add_option("--signature", sig_path, "signature file")->required();
  equiv_cmd->add_option("--corpus", corpus_path, "formula corpus file")
      ->required();
  equiv_cmd->add_flag("--exhaustive", exhaustive,
                      "sweep every interpretation up to --max-universe");
  equiv_cmd->add_option("--seed", seed, "random mode seed");
  equiv_cmd->add_option("--trials", trials, "random mode trial count");
  equiv_cmd->add_option("--max-universe", max_universe,
                        "largest universe size");
  equiv_cmd->add_option("--budget", budget, "enumeration budget");

  std::string claims_arg = "all";
  std::string mode_arg = "exhaustive";
  std::uint64_t audit_budget = 1000;
  std::string out_path, findings_path = "FINDINGS.md";
  bool scan_all = false;
  relsem::audit::Caps caps;
  auto* audit_cmd =
      app.add_subcommand("audit", "audit the identity catalogue");
  audit_cmd->add_option("--claims", claims_arg,
                        "'all' or a comma-separated claim list");
  audit_cmd->add_option("--mode", mode_arg, "exhaustive|random");
  audit_cmd->add_option("--budget", audit_budget,
                        "instances per claim in random mode");
  audit_cmd->add_option("--seed", seed, "random mode seed");
  audit_cmd->add_option("--out", out_path,
                        "report file (stdout when omitted)");
  audit_cmd->add_option("--findings", findings_path,
                        "findings file (empty to skip)");
  audit_cmd->add_flag("--all", scan_all,
                      "keep scanning past the first counterexample");
  audit_cmd->add_option("--max-domain", caps.max_domain, "domain size cap");
  audit_cmd->add_option("--max-vars", caps.max_vars, "variable count cap");
  audit_cmd->add_option("--max-arity", caps.max_arity, "symbol arity cap");
  audit_cmd->add_option("--max-depth", caps.max_depth, "formula depth cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(sig_path, formula_text);
    if (eval_cmd->parsed()) {
      if (engine != "direct" && engine != "comp" && engine != "both") {
        throw relsem::Error("unknown engine '" + engine + "'");
      }
      return cmd_eval(structure_path, formula_text, engine, budget);
    }
    if (term_cmd->parsed()) {
      return cmd_eval_term(structure_path, term_text, budget);
    }
    if (equiv_cmd->parsed()) {
      return cmd_check_equiv(sig_path, corpus_path, exhaustive, seed, trials,
                             max_universe, budget);
    }
    if (audit_cmd->parsed()) {
      return cmd_audit(claims_arg, mode_arg, audit_budget, seed, out_path,
                       findings_path, scan_all, caps);
    }
  } catch (const relsem::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const relsem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
