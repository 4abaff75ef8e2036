#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "critlab/critical_group.hpp"
#include "critlab/error.hpp"
#include "critlab/filtration.hpp"
#include "critlab/graph.hpp"
#include "critlab/moore.hpp"
#include "critlab/report.hpp"
#include "critlab/sandpile.hpp"
#include "critlab/smith.hpp"

namespace critlab::cli {

namespace {

enum class Format { text, json };

struct CliConfig {
  std::string graph_name;
  std::string edges_path;
  std::string matrix_path;
  std::vector<std::uint64_t> primes;
  Format format = Format::text;
  unsigned threads = 0;
  std::size_t max_vertices = 4000;
  std::uint64_t max_configurations = 20'000'000;
  std::size_t sink = 0;
  std::string params;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("CRITLAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    throw UsageError(std::string("CRITLAB_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

template <class T, class Reader>
T read_source(const std::string& path, Reader reader) {
  if (path == "-") return reader(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return reader(in);
}

Graph load_graph(const CliConfig& cfg) {
  const int sources = !cfg.graph_name.empty() + !cfg.edges_path.empty();
  if (!cfg.matrix_path.empty()) throw UsageError("this command takes a graph, not --matrix");
  if (sources != 1) throw UsageError("exactly one of --graph or --edges is required");
  Graph g = cfg.graph_name.empty()
                ? read_source<Graph>(cfg.edges_path, [](std::istream& in) { return read_edge_list(in); })
                : named_graph(cfg.graph_name);
  if (g.vertex_count() > cfg.max_vertices) {
    throw SizeLimitError("graph has " + std::to_string(g.vertex_count()) + " vertices; --max-vertices is " +
                         std::to_string(cfg.max_vertices));
  }
  return g;
}

// Graph sources stand for their Laplacian.
IntMatrix load_matrix(const CliConfig& cfg) {
  const int sources = !cfg.graph_name.empty() + !cfg.edges_path.empty() + !cfg.matrix_path.empty();
  if (sources != 1) throw UsageError("exactly one of --graph, --edges or --matrix is required");
  if (cfg.matrix_path.empty()) return laplacian_matrix(load_graph(cfg));
  IntMatrix m = read_source<IntMatrix>(cfg.matrix_path, [](std::istream& in) { return read_matrix(in); });
  if (std::max(m.rows(), m.cols()) > cfg.max_vertices) throw SizeLimitError("matrix exceeds --max-vertices");
  return m;
}

std::vector<Prime> load_primes(const CliConfig& cfg) {
  if (cfg.primes.empty()) throw UsageError("--prime is required");
  std::vector<Prime> out;
  for (auto p : cfg.primes) out.emplace_back(p);
  return out;
}

std::string join(const std::vector<Integer>& xs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i].get_str();
  return s;
}

template <class T>
std::string join_sizes(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

void emit(std::ostream& out, const CliConfig& cfg, const std::string& command, Json body,
          const std::function<void(std::ostream&)>& text) {
  if (cfg.format == Format::json) {
    body["command"] = command;
    out << with_schema(std::move(body)).dump(2) << '\n';
  } else {
    text(out);
  }
}

void cmd_graph_info(const CliConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const Json body = graph_report(g);
  emit(out, cfg, "graph info", body, [&](std::ostream& os) {
    os << "vertices " << g.vertex_count() << "\nedges " << g.edge_count() << "\ncomponents "
       << g.component_count() << "\ndegree " << body["min_degree"].get<std::size_t>() << ".."
       << body["max_degree"].get<std::size_t>() << '\n';
  });
}

void cmd_critgroup(const CliConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  CriticalGroupOptions opts;
  opts.threads = resolve_threads(cfg.threads);
  const CriticalGroup cg = critical_group(g, opts);
  const std::size_t bicycles = cg.even_factor_count();
  const Integer trees = g.is_connected() ? cg.order : Integer(0);
  emit(out, cfg, "critgroup", critical_group_report(cg, bicycles, trees), [&](std::ostream& os) {
    os << "order " << cg.order << " = " << cg.order_factored().to_string() << "\ninvariant_factors "
       << join(cg.invariant_factors) << "\nfree_rank " << cg.free_rank << "\nbicycle_dim " << bicycles
       << "\nspanning_trees " << trees << '\n';
  });
}

void cmd_snf(const CliConfig& cfg, std::ostream& out) {
  const IntMatrix m = load_matrix(cfg);
  const SnfResult snf = smith_normal_form(m);
  Json factors = Json::array();
  for (const auto& d : snf.invariant_factors) factors.push_back(to_json(d));
  emit(out, cfg, "snf", {{"invariant_factors", factors}, {"rank", snf.rank()}},
       [&](std::ostream& os) { os << join(snf.invariant_factors) << '\n'; });
}

void cmd_profile(const CliConfig& cfg, std::ostream& out) {
  const IntMatrix m = load_matrix(cfg);
  const auto primes = load_primes(cfg);
  const auto profiles = elem_divisor_profiles(m, primes, resolve_threads(cfg.threads));
  Json list = Json::array();
  for (const auto& p : profiles) list.push_back(profile_report(p));
  emit(out, cfg, "profile", {{"profiles", list}}, [&](std::ostream& os) {
    for (const auto& p : profiles)
      os << "p=" << p.p.value() << " e: " << join_sizes(p.multiplicities) << " kernel: " << p.kernel_rank << '\n';
  });
}

void cmd_filtration(const CliConfig& cfg, std::ostream& out) {
  const IntMatrix m = load_matrix(cfg);
  Json list = Json::array();
  std::vector<FiltrationReport> reports;
  for (Prime p : load_primes(cfg)) reports.push_back(verify_lemma_dims(m, p));
  bool all_pass = true;
  for (const auto& r : reports) {
    list.push_back(filtration_report(r));
    all_pass = all_pass && r.pass();
  }
  emit(out, cfg, "filtration", {{"reports", list}, {"pass", all_pass}}, [&](std::ostream& os) {
    for (const auto& r : reports)
      os << "p=" << r.p.value() << "\n  dims_M " << join_sizes(r.dims_M) << "\n  dims_N " << join_sizes(r.dims_N)
         << "\n  kernel_dim " << r.kernel_dim << "\n  " << (r.pass() ? "pass" : "FAIL") << '\n';
  });
  if (!all_pass) throw std::logic_error("filtration dimension identities failed");
}

void cmd_sandpile(const CliConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  if (cfg.sink >= g.vertex_count()) throw UsageError("--sink out of range");
  SandpileLimits lim;
  lim.max_configurations = cfg.max_configurations;
  lim.threads = resolve_threads(cfg.threads);
  const auto structure = sandpile_group_structure(g, cfg.sink, lim);
  Integer order = 1;
  Json factors = Json::array();
  for (const auto& f : structure) {
    order *= f;
    factors.push_back(to_json(f));
  }
  const ChipConfig id = sandpile_identity(g, cfg.sink);
  emit(out, cfg, "sandpile",
       {{"sink", cfg.sink}, {"recurrent_count", to_json(order)}, {"invariant_factors", factors},
        {"identity", id.chips}},
       [&](std::ostream& os) {
         os << "recurrent_count " << order << "\ninvariant_factors " << join(structure) << "\nidentity "
            << join_sizes(id.chips) << '\n';
       });
}

SrgParams parse_params(const std::string& text) {
  std::vector<std::int64_t> xs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    try {
      xs.push_back(std::stoll(tok, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw UsageError("--params: bad integer '" + tok + "'");
  }
  if (xs.size() != 4) throw UsageError("--params expects v,k,lambda,mu");
  return {xs[0], xs[1], xs[2], xs[3]};
}

void cmd_moore_analyze(const CliConfig& cfg, std::ostream& out) {
  if (cfg.params.empty()) throw UsageError("--params is required");
  const SrgParams p = parse_params(cfg.params);
  std::optional<Prime> prime;
  if (cfg.primes.size() > 1) throw UsageError("moore analyze takes a single --prime");
  if (!cfg.primes.empty()) prime = Prime(cfg.primes.front());
  const MooreAnalysis an = analyze_srg(p, prime);
  emit(out, cfg, "moore analyze", moore_report(an), [&](std::ostream& os) {
    os << "identity (L - " << an.identity.shift << "I)L = -" << an.identity.constant << "I + "
       << (an.identity.j_coefficient == 1 ? std::string() : an.identity.j_coefficient.get_str()) << "J\n";
    os << "w = " << an.identity.constant_factored.to_string() << "\nallowed elementary divisors";
    for (const auto& pp : an.bound.allowed) os << ' ' << pp.value;
    os << "\norder " << an.order.to_string() << '\n';
    for (const auto& fm : an.forced) {
      os << "forced " << fm.prime << ": ";
      if (fm.multiplicity) {
        os << *fm.multiplicity << '\n';
      } else {
        os << "powers up to " << fm.prime << '^' << fm.max_exponent << " allowed\n";
      }
    }
    if (an.even_invariant_factors) os << "even invariant factors " << *an.even_invariant_factors << '\n';
    for (const auto& [q, n] : an.unenumerated)
      os << "families for q=" << q << " not enumerated: " << n << " free parameters\n";
    for (const auto& fa : an.families) {
      for (const auto& c : fa.constraints) os << "constraint q=" << fa.prime << ": " << c.to_string() << '\n';
      for (const auto& fam : fa.families) {
        os << "case " << fam.case_label << " (q=" << fam.prime << ", t in [" << fam.t_min << ", " << fam.t_max
           << "]):";
        for (std::size_t i = 0; i < fam.e.size(); ++i) os << " e" << i << " = " << fam.e[i].to_string("t") << ';';
        if (!fam.in_terms_of_rank.empty()) {
          os << "\n  in terms of e0:";
          for (std::size_t i = 0; i < fam.in_terms_of_rank.size(); ++i)
            os << " e" << i + 1 << " = " << fam.in_terms_of_rank[i].to_string("e0") << ';';
        }
        os << '\n';
      }
    }
  });
}

void add_source_options(CLI::App* sub, CliConfig& cfg, bool matrix) {
  sub->add_option("--graph", cfg.graph_name, "builtin graph (petersen, hoffman-singleton, moore:K, cycle:N, ...)");
  sub->add_option("--edges", cfg.edges_path, "edge-list file, '-' for stdin");
  if (matrix) sub->add_option("--matrix", cfg.matrix_path, "integer matrix file, '-' for stdin");
  sub->add_option("--max-vertices", cfg.max_vertices, "size guard on vertices or matrix dimension");
}

void add_common_options(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text}, {"json", Format::json}}));
  sub->add_option("--threads", cfg.threads, "worker threads (default: CRITLAB_THREADS or 1)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical groups of graphs and SRG elementary-divisor analysis", "critlab"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::function<void()> action;

  auto* graph = app.add_subcommand("graph", "graph utilities");
  graph->require_subcommand(1);
  auto* info = graph->add_subcommand("info", "vertex, edge and component counts");
  add_source_options(info, cfg, false);
  add_common_options(info, cfg);
  info->callback([&] { action = [&] { cmd_graph_info(cfg, out); }; });

  auto* crit = app.add_subcommand("critgroup", "critical group of a graph");
  add_source_options(crit, cfg, false);
  add_common_options(crit, cfg);
  crit->callback([&] { action = [&] { cmd_critgroup(cfg, out); }; });

  auto* snf = app.add_subcommand("snf", "Smith normal form invariant factors");
  add_source_options(snf, cfg, true);
  add_common_options(snf, cfg);
  snf->callback([&] { action = [&] { cmd_snf(cfg, out); }; });

  auto* profile = app.add_subcommand("profile", "elementary-divisor multiplicities at primes");
  add_source_options(profile, cfg, true);
  add_common_options(profile, cfg);
  profile->add_option("--prime", cfg.primes, "prime(s), comma separated")->delimiter(',')->required();
  profile->callback([&] { action = [&] { cmd_profile(cfg, out); }; });

  auto* filt = app.add_subcommand("filtration", "residue dimensions of the p-adic filtrations");
  add_source_options(filt, cfg, true);
  add_common_options(filt, cfg);
  filt->add_option("--prime", cfg.primes, "prime(s), comma separated")->delimiter(',')->required();
  filt->callback([&] { action = [&] { cmd_filtration(cfg, out); }; });

  auto* sand = app.add_subcommand("sandpile", "sandpile group by exhaustive chip firing");
  add_source_options(sand, cfg, false);
  add_common_options(sand, cfg);
  sand->add_option("--sink", cfg.sink, "sink vertex");
  sand->add_option("--max-configs", cfg.max_configurations, "size guard on enumerated configurations");
  sand->callback([&] { action = [&] { cmd_sandpile(cfg, out); }; });

  auto* moore = app.add_subcommand("moore", "strongly regular parameter analysis");
  moore->require_subcommand(1);
  auto* analyze = moore->add_subcommand("analyze", "Laplacian identity, divisor bound and multiplicity families");
  add_common_options(analyze, cfg);
  analyze->add_option("--params", cfg.params, "v,k,lambda,mu")->required();
  analyze->add_option("--prime", cfg.primes, "restrict family enumeration to one prime");
  analyze->callback([&] { action = [&] { cmd_moore_analyze(cfg, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    action();
    return 0;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace critlab::cli
