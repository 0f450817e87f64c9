// thmc: command-line front end. Exit codes: 0 all checks pass, 1 a check
// failed, 2 usage error, 3 runtime error (bad input, cap exceeded, ...).

#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace thmc::cli;

namespace {

template <typename T>
std::string str(const T& v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

template <typename T>
std::string str(const std::optional<T>& v) {
  return v ? str(*v) : "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-state THMC toolkit: design matrices, facets, normality, Markov bases, exact tests"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  std::string out_dir = common.out_dir.string();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (default: THMC_THREADS, else all cores)");
  app.add_flag("-q,--quiet", common.quiet, "Only write files");

  // Each subcommand fills `run` and its parameters.
  std::string name;
  std::function<int(Manifest&)> run;
  std::function<void(Manifest&)> params;

  GenMatrixArgs gm;
  auto* gen = app.add_subcommand("gen-matrix", "Write the design matrix A^T");
  gen->add_option("-S", gm.S, "States")->capture_default_str()->check(CLI::Range(2, 9));
  gen->add_option("-T", gm.T, "Word length")->required()->check(CLI::Range(2, 64));
  gen->add_option("--format", gm.format)->capture_default_str()->check(CLI::IsMember({"csv", "json", "both"}));
  gen->add_option("--word-cap", gm.word_cap, "Largest number of words")->capture_default_str();
  gen->callback([&] {
    name = "gen-matrix";
    run = [&](Manifest& m) { return cmd_gen_matrix(common, gm, m); };
    params = [&](Manifest& m) {
      m.param("S", str(gm.S));
      m.param("T", str(gm.T));
      m.param("format", gm.format);
      m.param("word_cap", str(gm.word_cap));
    };
  });

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Sufficient statistics of a word data file");
  stats->add_option("data", st.data, "Word list file")->required()->check(CLI::ExistingFile);
  stats->add_option("-S", st.S, "States")->capture_default_str()->check(CLI::Range(2, 9));
  stats->callback([&] {
    name = "stats";
    run = [&](Manifest& m) { return cmd_stats(common, st, m); };
    params = [&](Manifest& m) {
      m.param("data", st.data.string());
      m.param("S", str(st.S));
    };
  });

  FacetsArgs fa;
  auto* fac = app.add_subcommand("facets", "Facet certificates, hulls and the 24-facet checks (S = 3)");
  fac->add_option("action", fa.action)->required()->check(CLI::IsMember({"certify", "hull", "verify24", "appendix", "lemmas"}));
  fac->add_option("-T", fa.T, "Word length")->capture_default_str()->check(CLI::Range(2, 64));
  fac->add_option("-r", fa.r, "Residue class for appendix (default: all)")->check(CLI::Range(0, 5));
  fac->add_option("--max-k", fa.max_k, "Largest k for the window lemmas")->capture_default_str()->check(CLI::Range(1, 6));
  fac->callback([&] {
    name = "facets";
    run = [&](Manifest& m) { return cmd_facets(common, fa, m); };
    params = [&](Manifest& m) {
      m.param("action", fa.action);
      m.param("T", str(fa.T));
      m.param("r", str(fa.r));
      m.param("max_k", str(fa.max_k));
    };
  });

  HullArgs hu;
  auto* hull = app.add_subcommand("hull", "Convex (or conic) hull of the distinct columns");
  hull->add_option("-S", hu.S, "States")->capture_default_str()->check(CLI::Range(2, 9));
  hull->add_option("-T", hu.T, "Word length")->required()->check(CLI::Range(2, 64));
  hull->add_flag("--cone", hu.cone, "Conic hull instead of the polytope");
  hull->callback([&] {
    name = "hull";
    run = [&](Manifest& m) { return cmd_hull(common, hu, m); };
    params = [&](Manifest& m) {
      m.param("S", str(hu.S));
      m.param("T", str(hu.T));
      m.param("cone", hu.cone ? "true" : "false");
    };
  });

  NormalityArgs no;
  auto* nor = app.add_subcommand("normality", "Decompose every saturation point of degree <= n-max");
  nor->add_option("-T", no.T, "Word length")->required()->check(CLI::Range(2, 64));
  nor->add_option("--n-max", no.n_max, "Largest degree")->capture_default_str()->check(CLI::Range(1, 20));
  nor->add_option("--cap", no.cap, "Largest number of candidate points")->capture_default_str();
  nor->add_flag("!--no-witnesses", no.witnesses, "Skip the witnesses file");
  nor->add_flag("--s4", no.s4, "Run the four-state non-normality probe at this T instead");
  nor->add_option("--s4-max-degree", no.s4_max_degree, "Search bound for --s4")->capture_default_str()->check(CLI::Range(1, 6));
  nor->callback([&] {
    name = "normality";
    run = [&](Manifest& m) { return cmd_normality(common, no, m); };
    params = [&](Manifest& m) {
      m.param("T", str(no.T));
      m.param("n_max", str(no.n_max));
      m.param("cap", str(no.cap));
      m.param("witnesses", no.witnesses ? "true" : "false");
      m.param("s4", no.s4 ? "true" : "false");
      m.param("s4_max_degree", str(no.s4_max_degree));
    };
  });

  MarkovArgs ma;
  auto* mar = app.add_subcommand("markov", "Degree-bounded Markov basis and fiber connectivity");
  mar->add_option("-S", ma.S, "States")->capture_default_str()->check(CLI::Range(2, 9));
  mar->add_option("-T", ma.T, "Word length")->required()->check(CLI::Range(2, 64));
  mar->add_option("--max-degree", ma.max_degree, "Largest move degree")->capture_default_str()->check(CLI::Range(1, 12));
  mar->add_option("--n-max", ma.n_max, "Largest fiber degree checked")->capture_default_str()->check(CLI::Range(1, 12));
  mar->add_option("--groebner", ma.groebner_degree, "Also run the truncated Groebner probe up to this degree");
  mar->add_option("--multiset-cap", ma.multiset_cap)->capture_default_str();
  mar->callback([&] {
    name = "markov";
    run = [&](Manifest& m) { return cmd_markov(common, ma, m); };
    params = [&](Manifest& m) {
      m.param("S", str(ma.S));
      m.param("T", str(ma.T));
      m.param("max_degree", str(ma.max_degree));
      m.param("n_max", str(ma.n_max));
      m.param("groebner", str(ma.groebner_degree));
      m.param("multiset_cap", str(ma.multiset_cap));
    };
  });

  WalkArgs wa;
  auto add_walk_options = [&](CLI::App* sub) {
    sub->add_option("data", wa.data, "Word list file")->required()->check(CLI::ExistingFile);
    sub->add_option("-S", wa.S, "States")->capture_default_str()->check(CLI::Range(2, 9));
    sub->add_option("--moves-file", wa.moves_file, "Moves file (default: all moves up to --move-degree)")
        ->check(CLI::ExistingFile);
    sub->add_option("--move-degree", wa.move_degree)->capture_default_str()->check(CLI::Range(1, 6));
    sub->add_option("--seed", wa.seed)->capture_default_str();
    sub->add_option("--steps", wa.steps)->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--burn-in", wa.burn_in)->capture_default_str();
    sub->add_option("--thin", wa.thinning)->capture_default_str()->check(CLI::PositiveNumber);
  };
  auto walk_params = [&](Manifest& m) {
    m.param("data", wa.data.string());
    m.param("S", str(wa.S));
    m.param("moves_file", wa.moves_file ? wa.moves_file->string() : "");
    m.param("move_degree", str(wa.move_degree));
    m.param("seed", str(wa.seed));
    m.param("steps", str(wa.steps));
    m.param("burn_in", str(wa.burn_in));
    m.param("thin", str(wa.thinning));
  };
  auto* wal = app.add_subcommand("walk", "Random walk on the fiber of a data set");
  add_walk_options(wal);
  wal->callback([&] {
    name = "walk";
    run = [&](Manifest& m) { return cmd_walk(common, wa, m); };
    params = walk_params;
  });
  auto* fit = app.add_subcommand("test-fit", "Monte Carlo exact test of time homogeneity");
  add_walk_options(fit);
  fit->add_option("--statistic", wa.statistic)->capture_default_str()->check(CLI::IsMember({"pearson", "g2"}));
  fit->add_option("--chains", wa.chains)->capture_default_str()->check(CLI::Range(1, 1024));
  fit->add_option("--trace-csv", wa.trace_csv, "Write sampled statistics here");
  fit->callback([&] {
    name = "test-fit";
    run = [&](Manifest& m) { return cmd_test_fit(common, wa, m); };
    params = [&](Manifest& m) {
      walk_params(m);
      m.param("statistic", wa.statistic);
      m.param("chains", str(wa.chains));
      m.param("trace_csv", wa.trace_csv ? wa.trace_csv->string() : "");
    };
  });

  int max_k = 2;
  auto* lem = app.add_subcommand("lemmas", "Exhaustive checks of the window lemmas");
  lem->add_option("--max-k", max_k)->capture_default_str()->check(CLI::Range(1, 6));
  lem->callback([&] {
    name = "lemmas";
    run = [&](Manifest& m) { return cmd_lemmas(common, max_k, m); };
    params = [&](Manifest& m) { m.param("max_k", str(max_k)); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  common.out_dir = out_dir;

  Manifest manifest(name);
  params(manifest);
  manifest.param("threads", str(common.threads));
  manifest.param("out", out_dir);
  int status = kError;
  try {
    status = run(manifest);
  } catch (const std::exception& e) {
    std::cerr << "thmc " << name << ": " << e.what() << '\n';
    manifest.error(e.what());
    status = kError;
  }
  try {
    manifest.write(common.out_dir, status);
  } catch (const std::exception& e) {
    std::cerr << "thmc: cannot write manifest: " << e.what() << '\n';
    if (status == kOk) status = kError;
  }
  return status;
}
