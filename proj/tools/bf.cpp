// bf: command-line front end for the bimonoid library.
#include <pthread.h>

#include <CLI11.hpp>
#include <bimonoid/bimonoid.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bimonoid;

struct ConfigError : Error {
  using Error::Error;
};

enum Exit { kTrue = 0, kFalse = 1, kUsage = 2, kBudget = 3 };

std::uint64_t numeric(const std::string& what, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 19)
    throw ConfigError(what + " must be a non-negative integer, got '" + value + "'");
  return std::stoull(value);
}

// Environment first, then per-invocation flags.
Limits config(const std::string& budget_flag, const std::string& size_flag) {
  Limits lim;
  if (const char* e = std::getenv("BF_STEP_BUDGET")) lim.step_budget = numeric("BF_STEP_BUDGET", e);
  if (const char* e = std::getenv("BF_MAX_TERM_SIZE")) lim.max_term_size = numeric("BF_MAX_TERM_SIZE", e);
  if (!budget_flag.empty()) lim.step_budget = numeric("--bf_step_budget", budget_flag);
  if (!size_flag.empty()) lim.max_term_size = numeric("--bf_max_term_size", size_flag);
  return lim;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) out.push_back(item);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Free strong bimonoids: canonical forms, rewriting, equivalence, M(X)."};
  app.require_subcommand(1);
  app.fallthrough();

  bool full = false;
  std::string budget_flag, size_flag;
  app.add_flag("--full-parens", full, "Render fully parenthesized (bit-exact) output");
  app.add_option("--bf_step_budget", budget_flag, "Rewrite step budget (overrides BF_STEP_BUDGET)");
  app.add_option("--bf_max_term_size", size_flag, "Term size cap (overrides BF_MAX_TERM_SIZE)");

  std::string t1, t2, theory = "sb", trs = "r", strategy = "innermost", model, assign, terms;
  bool stats = false, trace = false, id = false;
  std::size_t n = 0, max_iter = 64;

  auto* canon = app.add_subcommand("canon", "AC-canonical form of a simple term");
  canon->add_option("term", t1)->required();
  auto* simp = app.add_subcommand("simplify", "Remove 0 and unit factors");
  simp->add_option("term", t1)->required();
  auto* eqv = app.add_subcommand("eqv", "Decide equivalence under a theory");
  eqv->add_option("--theory", theory)->check(CLI::IsMember({"sb", "rd", "idrd", "ac"}));
  eqv->add_option("term1", t1)->required();
  eqv->add_option("term2", t2)->required();
  auto* nf = app.add_subcommand("nf", "Normal form under R or R_id");
  nf->add_option("--trs", trs)->check(CLI::IsMember({"r", "rid"}));
  auto* strat_opt = nf->add_option("--strategy", strategy, "left-first | right-first | innermost | random:<seed>");
  nf->add_flag("--stats", stats);
  nf->add_flag("--trace", trace);
  nf->add_option("term", t1)->required();
  auto* mul = app.add_subcommand("mul", "Right-distributive product of polynomials");
  mul->add_flag("--id", id);
  mul->add_option("term1", t1)->required();
  mul->add_option("term2", t2)->required();
  auto* add_cmd = app.add_subcommand("add", "Sum of polynomials");
  add_cmd->add_flag("--id", id);
  add_cmd->add_option("term1", t1)->required();
  add_cmd->add_option("term2", t2)->required();
  auto* eval = app.add_subcommand("eval", "Evaluate in a built-in strong bimonoid");
  eval->add_option("--model", model)->required()->check(CLI::IsMember({"bool", "plusmin", "plusplus", "words"}));
  eval->add_option("--assign", assign, "x=v,y=w,...");
  eval->add_option("term", t1)->required();
  auto* large = app.add_subcommand("large", "Is the id-reduced polynomial large?");
  large->add_option("term", t1)->required();
  auto* witness = app.add_subcommand("witness", "The witness polynomial p_n");
  witness->add_option("n", n)->required();
  auto* wcl = app.add_subcommand("wcl", "Weak closure in M(X) of comma-separated polynomials");
  wcl->add_option("terms", terms)->required();
  wcl->add_option("--max-iter", max_iter);
  auto* dot = app.add_subcommand("dot", "Labeled tree of a simple term in DOT");
  dot->add_option("term", t1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  const RenderMode mode = full ? RenderMode::FullParens : RenderMode::Pretty;
  auto show = [&](const Term& t) { std::cout << render(t, mode) << "\n"; };
  auto answer = [](bool b) {
    std::cout << (b ? "true" : "false") << "\n";
    return b ? kTrue : kFalse;
  };

  try {
    const Limits lim = config(budget_flag, size_flag);
    auto read = [&](const std::string& text) {
      Term t = parse(text);
      if (t.size() > lim.max_term_size) throw StepBudgetExceeded("input exceeds the term size limit");
      return t;
    };

    if (canon->parsed()) {
      show(canonical_term(read(t1)));
    } else if (simp->parsed()) {
      show(simplify(read(t1)));
    } else if (eqv->parsed()) {
      Term a = read(t1), b = read(t2);
      Theory th = parse_theory(theory);
      if ((th == Theory::RD || th == Theory::IDRD) && std::max(a.size(), b.size()) > 64)
        std::cerr << "warning: input size above 64; the " << theory << " decision may take exponential time\n";
      return answer(equivalent(a, b, th, lim));
    } else if (nf->parsed()) {
      Term t = read(t1);
      if (trs == "rid") {
        if (stats || trace || strat_opt->count() > 0) {
          std::cerr << "error: --stats, --trace and --strategy apply to --trs r only\n";
          return kUsage;
        }
        show(normal_form_id(t, lim));
        return kTrue;
      }
      NormalFormReport rep = normal_form(t, rules_R(), Strategy::parse(strategy), lim, trace);
      if (rep.trace)
        for (const TraceEntry& e : *rep.trace) std::cout << render_trace_line(e) << "\n";
      show(rep.result);
      if (stats) {
        std::cout << "total_steps = " << rep.total_steps << "\n";
        std::cout << "distributivity_steps = " << rep.distributivity_steps << "\n";
      }
    } else if (mul->parsed()) {
      if (id) show(mul_id(IdPolynomial::of(read(t1)), IdPolynomial::of(read(t2))).rep());
      else show(mul_rd(Polynomial::of(read(t1)), Polynomial::of(read(t2))).rep());
    } else if (add_cmd->parsed()) {
      if (id) show(add_id(IdPolynomial::of(read(t1)), IdPolynomial::of(read(t2))).rep());
      else show(add(Polynomial::of(read(t1)), Polynomial::of(read(t2))).rep());
    } else if (eval->parsed()) {
      std::map<std::string, std::string> env;
      for (const std::string& kv : split(assign, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || !valid_identifier(kv.substr(0, eq)))
          throw std::invalid_argument("malformed assignment '" + kv + "'");
        env[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      Term t = read(t1);
      for (const AnyModel& m : builtin_models())
        if (m.name == model) std::cout << m.eval(t, env) << "\n";
    } else if (large->parsed()) {
      return answer(is_large(IdPolynomial::of(read(t1))));
    } else if (witness->parsed()) {
      show(p_witness(n).rep());
    } else if (wcl->parsed()) {
      std::vector<MElement> seed;
      for (const std::string& s : split(terms, ',')) seed.push_back(m_inject(IdPolynomial::of(read(s))));
      for (const MElement& e : weak_closure(seed, max_iter)) std::cout << e.str(mode) << "\n";
    } else if (dot->parsed()) {
      std::cout << to_dot(read(t1));
    }
    return kTrue;
  } catch (const StepBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const IterationBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

struct Args {
  int argc;
  char** argv;
  int code;
};

}  // namespace

// Deeply nested input terms recurse deeply; give the work a large stack.
int main(int argc, char** argv) {
  Args args{argc, argv, kUsage};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, std::size_t{1} << 30);
  pthread_t th;
  auto body = [](void* p) -> void* {
    auto* a = static_cast<Args*>(p);
    a->code = run(a->argc, a->argv);
    return nullptr;
  };
  if (pthread_create(&th, &attr, body, &args) != 0) return run(argc, argv);
  pthread_join(th, nullptr);
  std::cout.flush();
  return args.code;
}
