#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>

#include "thmc/design.hpp"
#include "thmc/facets.hpp"
#include "thmc/markov.hpp"
#include "thmc/mcmc.hpp"
#include "thmc/normality.hpp"
#include "thmc/polytope.hpp"
#include "thmc/words.hpp"

namespace thmc::cli {

namespace {

std::ofstream open_output(const Common& c, const std::string& name, Manifest& m) {
  std::filesystem::create_directories(c.out_dir);
  const auto path = c.out_dir / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  m.output(path);
  return out;
}

void write_json(const Common& c, const std::string& name, const nlohmann::json& j, Manifest& m) {
  auto out = open_output(c, name, m);
  out << j.dump(2) << '\n';
}

void say(const Common& c, const std::string& line) {
  if (!c.quiet) std::cout << line << '\n';
}

void print_report(const Common& c, const Report& r) {
  if (c.quiet) return;
  for (const auto& i : r.items()) {
    std::cout << (i.pass ? "PASS " : (i.gating ? "FAIL " : "NOTE ")) << i.name;
    if (!i.detail.empty()) std::cout << " (" << i.detail << ')';
    std::cout << '\n';
  }
}

int verdict(const Report& r) { return r.all_pass() ? kOk : kCheckFailed; }

WordMultiset load_words(const std::filesystem::path& path, int S, Manifest& m) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  m.input(path);
  auto W = read_words(in, S);
  if (W.empty()) throw std::invalid_argument(path.string() + ": no words");
  return W;
}

nlohmann::json counts_json(const TransitionVector& x) {
  nlohmann::json j = nlohmann::json::array();
  for (auto v : x.counts()) j.push_back(std::to_string(v));
  return j;
}

std::vector<RationalVector> column_points(int S, std::size_t T) {
  std::vector<RationalVector> pts;
  for (const auto& x : distinct_columns(S, T)) pts.push_back(to_rational_vector(x.counts()));
  return pts;
}

std::string suffix(std::size_t T) { return "_T" + std::to_string(T); }

}  // namespace

int cmd_gen_matrix(const Common& c, const GenMatrixArgs& a, Manifest& m) {
  const DesignMatrix A(a.S, a.T, a.word_cap);
  const std::string base = "matrix_S" + std::to_string(a.S) + suffix(a.T);
  if (a.format == "csv" || a.format == "both") {
    auto out = open_output(c, base + ".csv", m);
    write_csv(out, A);
  }
  if (a.format == "json" || a.format == "both") write_json(c, base + ".json", to_json(A), m);
  say(c, std::to_string(A.rows()) + " x " + std::to_string(A.cols()) + " design matrix written to " +
             c.out_dir.string());
  return kOk;
}

int cmd_stats(const Common& c, const StatsArgs& a, Manifest& m) {
  const auto W = load_words(a.data, a.S, m);
  const auto b = state_graph(W);
  nlohmann::json out_deg = nlohmann::json::array(), in_deg = nlohmann::json::array();
  for (int i = 0; i < a.S; ++i) {
    out_deg.push_back(std::to_string(b.out_degree(i)));
    in_deg.push_back(std::to_string(b.in_degree(i)));
  }
  const nlohmann::json j{{"S", std::to_string(a.S)},
                         {"T", std::to_string(W.length())},
                         {"n", std::to_string(W.total())},
                         {"distinct_words", std::to_string(W.entries().size())},
                         {"row_order", pair_labels(a.S)},
                         {"b", counts_json(b)},
                         {"out_degree", out_deg},
                         {"in_degree", in_deg}};
  write_json(c, "stats.json", j, m);
  if (!c.quiet) std::cout << j.dump(2) << '\n';
  return kOk;
}

int cmd_facets(const Common& c, const FacetsArgs& a, Manifest& m) {
  const std::string T = suffix(a.T);
  if (a.action == "certify") {
    Report r;
    nlohmann::json certs = nlohmann::json::array();
    const DesignMatrix A(facets::kStates, a.T);
    std::set<IntVector> orbit;
    for (const auto& f : facets::table1_vectors(a.T))
      for (const auto& v : facets::symmetry_orbit(f.c, true)) orbit.insert(v);
    for (const auto& v : orbit) {
      const auto cert = facets::certify_facet(v, A, c.threads);
      certs.push_back(facets::to_json(cert));
      std::string label = "[";
      for (std::size_t k = 0; k < v.size(); ++k) label += (k ? "," : "") + to_string(v[k]);
      r.add("facet " + label + "]", cert.valid(),
            "min " + to_string(cert.min_value) + ", tight rank " + std::to_string(cert.tight_rank));
    }
    r.add("24 distinct facet vectors", orbit.size() == 24, std::to_string(orbit.size()));
    write_json(c, "facets_certify" + T + ".json", {{"T", std::to_string(a.T)}, {"certificates", certs}, {"report", r.to_json()}}, m);
    print_report(c, r);
    return verdict(r);
  }
  if (a.action == "hull") {
    const auto h = polytope::convex_hull(column_points(facets::kStates, a.T));
    write_json(c, "facets_hull" + T + ".json",
               {{"T", std::to_string(a.T)}, {"facets", std::to_string(h.inequalities.size())}, {"hull", polytope::to_json(h)}}, m);
    say(c, "T=" + std::to_string(a.T) + ": " + std::to_string(h.inequalities.size()) + " facets");
    return kOk;
  }
  if (a.action == "verify24") {
    const auto res = facets::verify_24_facets(a.T);
    write_json(c, "facets_verify24" + T + ".json", facets::to_json(res), m);
    print_report(c, res.report);
    return verdict(res.report);
  }
  if (a.action == "appendix") {
    Report r;
    nlohmann::json all = nlohmann::json::array();
    for (int k = 0; k < 6; ++k) {
      if (a.r && *a.r != k) continue;
      const auto res = facets::verify_appendix_vertices(k);
      all.push_back(facets::to_json(res));
      r.merge(res.report, "r=" + std::to_string(k) + ": ");
    }
    write_json(c, "facets_appendix.json", {{"results", all}, {"report", r.to_json()}}, m);
    print_report(c, r);
    return verdict(r);
  }
  if (a.action == "lemmas") return cmd_lemmas(c, a.max_k, m);
  throw std::invalid_argument("unknown facets action " + a.action);
}

int cmd_hull(const Common& c, const HullArgs& a, Manifest& m) {
  const auto pts = column_points(a.S, a.T);
  const auto h = a.cone ? polytope::conic_hull(pts) : polytope::convex_hull(pts);
  const std::string name = std::string(a.cone ? "cone" : "hull") + "_S" + std::to_string(a.S) + suffix(a.T) + ".json";
  write_json(c, name,
             {{"S", std::to_string(a.S)},
              {"T", std::to_string(a.T)},
              {"kind", a.cone ? "cone" : "polytope"},
              {"points", std::to_string(pts.size())},
              {"facets", std::to_string(h.inequalities.size())},
              {"hull", polytope::to_json(h)}},
             m);
  say(c, std::to_string(pts.size()) + " distinct columns, " + std::to_string(h.inequalities.size()) + " facets");
  return kOk;
}

int cmd_normality(const Common& c, const NormalityArgs& a, Manifest& m) {
  if (a.s4) {
    normality::S4ProbeOptions opt;
    opt.max_degree = a.s4_max_degree;
    opt.cap = a.cap;
    opt.threads = c.threads;
    const auto res = normality::s4_nonnormality_probe(a.T, opt);
    write_json(c, "s4probe" + suffix(a.T) + ".json", normality::to_json(res), m);
    print_report(c, res.report);
    return verdict(res.report);
  }
  normality::NormalityOptions opt;
  opt.saturation.cap = a.cap;
  opt.saturation.threads = c.threads;
  opt.keep_witnesses = a.witnesses;
  auto res = normality::check_normality(a.T, a.n_max, opt);
  if (a.witnesses) {
    const std::string name = "witnesses" + suffix(a.T) + ".words";
    auto out = open_output(c, name, m);
    normality::write_witnesses(out, res);
    res.witnesses_file = (c.out_dir / name).string();
  }
  write_json(c, "normality" + suffix(a.T) + ".json", normality::to_json(res), m);
  print_report(c, res.report);
  return verdict(res.report);
}

int cmd_markov(const Common& c, const MarkovArgs& a, Manifest& m) {
  const DesignMatrix A(a.S, a.T);
  markov::MoveOptions mo;
  mo.multiset_cap = a.multiset_cap;
  mo.threads = c.threads;
  // Moves of degree above n_max cannot act on the checked fibers, so only
  // the part up to n_max is enumerated.
  const std::size_t d = std::min<std::size_t>(a.max_degree, static_cast<std::size_t>(a.n_max));
  const auto moves = markov::enumerate_moves(A, d, mo);
  markov::CheckOptions co;
  co.multiset_cap = a.multiset_cap;
  co.threads = c.threads;
  const auto check = markov::is_markov_basis(moves, A, a.n_max, co);
  const auto basis = markov::minimal_markov_basis(A, a.max_degree, a.n_max, mo);
  const auto basis_check = markov::is_markov_basis(basis, A, a.n_max, co);

  {
    auto out = open_output(c, "moves" + suffix(a.T) + ".txt", m);
    out << "# minimal Markov basis for fibers of degree <= " << a.n_max << ", S=" << a.S << " T=" << a.T << '\n';
    markov::write_moves(out, basis, A);
  }
  std::map<std::size_t, std::size_t> hist;
  for (const auto& z : basis) ++hist[z.degree()];
  nlohmann::json hj = nlohmann::json::object();
  for (auto [deg, k] : hist) hj[std::to_string(deg)] = std::to_string(k);

  Report r;
  r.add("moves of degree <= " + std::to_string(a.max_degree) + " connect fibers of degree <= " + std::to_string(a.n_max),
        check.connected,
        std::to_string(check.fibers_checked) + " fibers, " + std::to_string(moves.size()) + " moves of degree <= " +
            std::to_string(d) + " enumerated; higher degrees cannot act on these fibers");
  r.add("minimal basis connects the same fibers", basis_check.connected, std::to_string(basis.size()) + " moves");
  r.note("minimal basis degree <= 2", markov::max_degree(basis) <= 2,
         "degree " + std::to_string(markov::max_degree(basis)));

  nlohmann::json j{{"S", std::to_string(a.S)},
                   {"T", std::to_string(a.T)},
                   {"max_degree", std::to_string(a.max_degree)},
                   {"n_max", std::to_string(a.n_max)},
                   {"moves_enumerated_up_to_degree", std::to_string(d)},
                   {"moves_enumerated", std::to_string(moves.size())},
                   {"connectivity", markov::to_json(check, A)},
                   {"minimal_basis",
                    {{"size", std::to_string(basis.size())},
                     {"max_degree", std::to_string(markov::max_degree(basis))},
                     {"degree_histogram", hj},
                     {"file", (c.out_dir / ("moves" + suffix(a.T) + ".txt")).string()}}}};
  if (a.groebner_degree) {
    markov::GroebnerOptions go;
    go.moves = mo;
    const auto probe = markov::groebner_degree_probe(A, *a.groebner_degree, go);
    j["groebner"] = markov::to_json(probe, A);
    r.merge(probe.report, "groebner: ");
  }
  j["report"] = r.to_json();
  write_json(c, "markov" + suffix(a.T) + ".json", j, m);
  print_report(c, r);
  return verdict(r);
}

namespace {

struct WalkSetup {
  DesignMatrix A;
  mcmc::Table u0;
  std::vector<markov::Move> moves;
};

WalkSetup walk_setup(const Common& c, const WalkArgs& a, Manifest& m) {
  const auto W = load_words(a.data, a.S, m);
  WalkSetup s{DesignMatrix(a.S, W.length()), {}, {}};
  s.u0 = mcmc::to_table(W, s.A);
  if (a.moves_file) {
    std::ifstream in(*a.moves_file);
    if (!in) throw std::runtime_error("cannot read " + a.moves_file->string());
    m.input(*a.moves_file);
    s.moves = markov::read_moves(in, s.A);
  } else {
    markov::MoveOptions mo;
    mo.threads = c.threads;
    s.moves = markov::enumerate_moves(s.A, a.move_degree, mo);
  }
  return s;
}

mcmc::WalkConfig walk_config(const WalkArgs& a) { return {a.seed, a.steps, a.burn_in, a.thinning}; }

}  // namespace

int cmd_walk(const Common& c, const WalkArgs& a, Manifest& m) {
  const auto s = walk_setup(c, a, m);
  const auto cfg = walk_config(a);
  const auto b = mcmc::marginal(s.u0, s.A);
  std::uint64_t emitted = 0, distinct = 0;
  bool in_fiber = true, nonnegative = true;
  std::set<mcmc::Table> seen;
  auto out = open_output(c, "walk_trace.csv", m);
  out << "step,table\n";
  mcmc::walk(s.u0, s.moves, cfg, [&](std::uint64_t t, const mcmc::Table& u) {
    ++emitted;
    for (auto v : u) nonnegative = nonnegative && v >= 0;
    in_fiber = in_fiber && mcmc::marginal(u, s.A) == b;
    if (seen.insert(u).second) ++distinct;
    out << t << ',';
    bool first = true;
    for (std::size_t k = 0; k < u.size(); ++k)
      for (std::int64_t r = 0; r < u[k]; ++r) {
        out << (first ? "" : " ") << s.A.column(k).word.str();
        first = false;
      }
    out << '\n';
  });
  Report r;
  r.add("every emitted table is non-negative", nonnegative);
  r.add("every emitted table lies in the starting fiber", in_fiber);
  r.add("sample count is (steps - burn_in) / thinning", emitted == cfg.sample_count(), std::to_string(emitted));
  write_json(c, "walk.json",
             {{"moves", s.moves.size()},
              {"samples", emitted},
              {"distinct_tables", distinct},
              {"config", {{"seed", cfg.seed}, {"steps", cfg.steps}, {"burn_in", cfg.burn_in}, {"thinning", cfg.thinning}}},
              {"report", r.to_json()}},
             m);
  print_report(c, r);
  return verdict(r);
}

int cmd_test_fit(const Common& c, const WalkArgs& a, Manifest& m) {
  const auto s = walk_setup(c, a, m);
  mcmc::TestOptions opt;
  opt.statistic = a.statistic;
  opt.chains = a.chains;
  opt.threads = c.threads;
  opt.keep_trace = a.trace_csv.has_value();
  const auto res = mcmc::exact_test(s.u0, s.A, s.moves, walk_config(a), opt);
  if (a.trace_csv) {
    std::filesystem::path p = *a.trace_csv;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    mcmc::write_trace_csv(out, res);
    m.output(p);
  }
  auto j = mcmc::to_json(res);
  j["moves"] = s.moves.size();
  write_json(c, "test_fit.json", j, m);
  if (!c.quiet) std::cout << j.dump(2) << '\n';
  return res.p_value >= 0 && res.p_value <= 1 ? kOk : kCheckFailed;
}

int cmd_lemmas(const Common& c, int max_k, Manifest& m) {
  const auto r = facets::verify_window_lemmas(max_k);
  write_json(c, "lemmas.json", {{"max_k", std::to_string(max_k)}, {"report", r.to_json()}}, m);
  print_report(c, r);
  return verdict(r);
}

}  // namespace thmc::cli
