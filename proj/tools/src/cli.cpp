#include "hyperreg/cli/cli.hpp"

#include "hyperreg/cli/io.hpp"
#include "hyperreg/cli/reports.hpp"
#include "hyperreg/construct.hpp"
#include "hyperreg/errors.hpp"
#include "hyperreg/parallel.hpp"
#include "hyperreg/rng.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#ifndef HYPERREG_VERSION
#define HYPERREG_VERSION "0.0.0"
#endif

namespace hyperreg::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Artifact {
  std::string option;
  std::string name;
  bool directory = false;
  std::string sha256;
  std::size_t bytes = 0;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  /// Writes to `path` (recorded under `option`), or to stdout when the path is empty.
  void emit(const std::string& option, const std::string& path, const std::string& content) {
    if (path.empty()) {
      out_ << content;
      return;
    }
    io::write_file(path, content);
    artifacts_.push_back({option, fs::path(path).filename().string(), false, io::sha256_hex(content), content.size()});
  }

  /// Writes `dir/name`, recorded as part of the directory output `option`.
  void emit_in(const std::string& option, const std::string& dir, const std::string& name, const std::string& content) {
    io::write_file((fs::path(dir) / name).string(), content);
    artifacts_.push_back({option, name, true, io::sha256_hex(content), content.size()});
  }

  const std::vector<Artifact>& artifacts() const { return artifacts_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::vector<Artifact> artifacts_;
};

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir);
}

/// "p/q", an integer, or a decimal such as 0.25 (converted exactly).
Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    const std::string frac = s.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string whole = s.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    BigInt num = BigInt(whole.empty() || whole == "-" ? std::string("0") : whole) * den;
    BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
    num += neg ? BigInt(-f) : f;
    return Rational(num, den);
  } catch (const std::exception&) {
    throw DomainError("cannot parse rational '" + s + "'");
  }
}

/// KIND:K for a canonical bigraph, otherwise a bigraph JSON file.
Bigraph parse_base(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const auto kind = parse_canonical_kind(spec.substr(0, colon));
    if (kind) {
      std::size_t k = 0;
      try {
        k = std::stoul(spec.substr(colon + 1));
      } catch (const std::exception&) {
        throw DomainError("bad size in '" + spec + "'");
      }
      return canonical(*kind, k);
    }
  }
  return io::bigraph_from_json(io::read_json(spec));
}

json options_of(const CLI::App* app) {
  json j = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty() || opt->count() == 0) continue;
    const auto& res = opt->results();
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    if (res.size() == 1)
      j[name] = res.front();
    else
      j[name] = res;
  }
  return j;
}

json manifest(const std::vector<std::string>& args, const std::string& command, const json& params,
              std::optional<std::uint64_t> seed, const std::vector<Artifact>& artifacts, double elapsed_ms) {
  json j = io::envelope("manifest");
  j["tool_version"] = HYPERREG_VERSION;
  j["command"] = command;
  j["argv"] = args;
  j["parameters"] = params;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["rng"] = std::string(Rng::kAlgorithm);
  json arts = json::array();
  for (const auto& a : artifacts)
    arts.push_back(json{{"option", a.option}, {"name", a.name}, {"directory", a.directory}, {"sha256", a.sha256},
                        {"bytes", a.bytes}});
  j["artifacts"] = arts;
  j["timing"] = json{{"elapsed_ms", elapsed_ms}};
  return j;
}

json instance_json(const BlowupInstance& inst, const PairPartitionReport& cert, std::uint64_t seed, const json& params) {
  json j = io::envelope("blowup_instance");
  j["base"] = io::to_json(inst.base);
  j["gamma"] = io::to_json(inst.gamma);
  j["n_per_class"] = inst.n_per_class;
  j["layout"] = io::report(inst.layout);
  j["certification"] = io::report(cert);
  j["seed"] = seed;
  j["rng"] = std::string(Rng::kAlgorithm);
  j["parameters"] = params;
  j["parameters"].erase("out");  // artifacts must not depend on where they are written
  return j;
}

void write_instance(Session& s, const std::string& dir, const BlowupInstance& inst, const Decomposition& decomp,
                    const PairPartitionReport& cert, std::uint64_t seed, const json& params) {
  ensure_dir(dir);
  s.emit_in("--out", dir, "graph.json", io::dump(io::to_json(inst.graph)));
  s.emit_in("--out", dir, "decomp.json", io::dump(io::to_json(decomp)));
  s.emit_in("--out", dir, "instance.json", io::dump(instance_json(inst, cert, seed, params)));
}

FillPolicy parse_fill(const std::string& kind, double p, std::uint64_t seed) {
  if (kind == "empty") return {};
  if (kind == "random") return FillPolicy{FillKind::Random, p, seed};
  throw DomainError("fill must be 'empty' or 'random'");
}

/// Replaces the value of `option` in argv (both "--opt v" and "--opt=v" forms).
void replace_option(std::vector<std::string>& argv, const std::string& option, const std::string& value) {
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == option && i + 1 < argv.size()) {
      argv[i + 1] = value;
      return;
    }
    if (argv[i].rfind(option + "=", 0) == 0) {
      argv[i] = option + "=" + value;
      return;
    }
  }
  throw IoError("manifest argv lacks " + option);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session(out, err);
  const auto started = std::chrono::steady_clock::now();

  CLI::App app{"Desk-scale toolkit for 3-graph regularity, VC2-dimension and homogeneous decompositions", "hyperreg"};
  app.set_version_flag("--version", HYPERREG_VERSION);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: HYPERREG_THREADS, then all cores)");

  // Shared option storage.
  std::string out_path, report_path, csv_path, manifest_path;
  std::uint64_t seed = 0;
  double eps1 = 0.1, eps2 = 0.05, mu = 0.1;
  std::function<int()> action;
  std::string command;
  const CLI::App* active = nullptr;
  bool manifest_in_out_dir = false;
  bool seeded = false;

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);

  // gen blowup
  std::string base_spec, ell_spec = "auto", fill_kind = "empty";
  std::size_t n = 0, per_class = 0, retries = 8;
  double target_dev = 0.005, fill_p = 0.5;
  auto* gen_blowup = gen->add_subcommand("blowup", "(n,Γ)-blowup of a base bigraph with a certified Γ");
  gen_blowup->add_option("--base", base_spec, "KIND:K (H, M, Mbar, Ubg) or a bigraph JSON file")->required();
  gen_blowup->add_option("--n", n, "|A| = |B|")->required()->check(CLI::PositiveNumber);
  gen_blowup->add_option("--per-class", per_class, "|C_v| (default n)");
  gen_blowup->add_option("--ell", ell_spec, "'auto' (= |U|) or a multiple of |U|");
  gen_blowup->add_option("--seed", seed, "Random seed")->required();
  gen_blowup->add_option("--target-dev", target_dev, "dev2 certification target")->check(CLI::PositiveNumber);
  gen_blowup->add_option("--retries", retries, "Certification attempts");
  gen_blowup->add_option("--fill", fill_kind, "Non-crossing triples: empty or random");
  gen_blowup->add_option("--fill-p", fill_p, "Edge probability for random fill")->check(CLI::Range(0.0, 1.0));
  gen_blowup->add_option("--out", out_path, "Output directory")->required();
  gen_blowup->callback([&] {
    active = gen_blowup;
    command = "gen blowup";
    manifest_in_out_dir = true;
    seeded = true;
    action = [&] {
      const Bigraph base = parse_base(base_spec);
      const std::size_t u = base.u_size();
      std::size_t factor = 1;
      if (ell_spec != "auto") {
        std::size_t ell = 0;
        try {
          ell = std::stoul(ell_spec);
        } catch (const std::exception&) {
          throw DomainError("--ell must be 'auto' or an integer");
        }
        if (ell == 0 || ell % u != 0) throw DomainError("--ell must be a positive multiple of |U|");
        factor = ell / u;
      }
      auto part = quasirandom_pair_partition(n, n, u, target_dev, seed, retries);
      const auto inst =
          blowup(base, part.gamma, per_class ? per_class : n, parse_fill(fill_kind, fill_p, seed + 1));
      const Decomposition decomp = factor > 1 ? split_colors(inst.natural, factor, seed + 2) : inst.natural;
      write_instance(session, out_path, inst, decomp, part.report, seed, options_of(gen_blowup));
      return kExitOk;
    };
  });

  // gen lb
  std::string kind_name;
  std::size_t size_k = 0;
  auto* gen_lb = gen->add_subcommand("lb", "Lower-bound instance over a canonical bigraph");
  gen_lb->add_option("--kind", kind_name, "m, h, mbar or ubg")->required();
  auto* lb_l = gen_lb->add_option("--l,--k", size_k, "Size L (or K for ubg)")->required();
  (void)lb_l;
  gen_lb->add_option("--n", n, "|A| = |B|")->required()->check(CLI::PositiveNumber);
  gen_lb->add_option("--seed", seed, "Random seed")->required();
  gen_lb->add_option("--target-dev", target_dev, "dev2 certification target")->check(CLI::PositiveNumber);
  gen_lb->add_option("--retries", retries, "Certification attempts");
  gen_lb->add_option("--out", out_path, "Output directory")->required();
  gen_lb->callback([&] {
    active = gen_lb;
    command = "gen lb";
    manifest_in_out_dir = true;
    seeded = true;
    action = [&] {
      const auto kind = parse_canonical_kind(kind_name);
      if (!kind) throw DomainError("unknown kind '" + kind_name + "'");
      const auto lb = lower_bound_instance(*kind, size_k, n, seed, target_dev, retries);
      write_instance(session, out_path, lb.instance, lb.instance.natural, lb.certification, seed, options_of(gen_lb));
      return kExitOk;
    };
  });

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "Quasirandomness and decomposition audits");
  audit_cmd->require_subcommand(1);
  std::string input_path, graph_path, decomp_path, relation_path, reference;
  bool exact = false;
  auto* audit_dev2 = audit_cmd->add_subcommand("dev2", "dev2 report of a bigraph");
  audit_dev2->add_option("--input", input_path, "Bigraph JSON")->required();
  audit_dev2->add_flag("--exact", exact, "Exact rational arithmetic (at most 64 per side)");
  audit_dev2->add_option("--reference", reference, "Declared density (p/q or decimal)");
  audit_dev2->add_option("--out", out_path, "Report file (default stdout)");
  audit_dev2->add_option("--manifest", manifest_path, "Write a manifest here");
  audit_dev2->callback([&] {
    active = audit_dev2;
    command = "audit dev2";
    action = [&] {
      const Bigraph b = io::bigraph_from_json(io::read_json(input_path));
      std::optional<Rational> ref;
      if (!reference.empty()) ref = parse_rational(reference);
      const auto r = dev2(b, exact ? Arithmetic::Exact : Arithmetic::Float, ref);
      session.emit("--out", out_path, io::dump(io::report(r)));
      return kExitOk;
    };
  });

  auto* audit_dev23 = audit_cmd->add_subcommand("dev23", "dev2,3 report of a trigraph over a triad");
  audit_dev23->add_option("--triad", input_path, "Triad JSON")->required();
  audit_dev23->add_option("--relation", relation_path, "Trigraph JSON over the triad's classes")->required();
  audit_dev23->add_flag("--exact", exact, "Exact rational arithmetic (at most 16 per class)");
  audit_dev23->add_option("--out", out_path, "Report file (default stdout)");
  audit_dev23->add_option("--manifest", manifest_path, "Write a manifest here");
  audit_dev23->callback([&] {
    active = audit_dev23;
    command = "audit dev23";
    action = [&] {
      const Triad g = io::triad_from_json(io::read_json(input_path));
      const Trigraph h = io::trigraph_from_json(io::read_json(relation_path));
      const auto r = dev23(h, g, exact ? Arithmetic::Exact : Arithmetic::Float);
      session.emit("--out", out_path, io::dump(io::report(r)));
      return kExitOk;
    };
  });

  bool no_triads = false;
  auto* audit_decomp = audit_cmd->add_subcommand("decomp", "Regularity, homogeneity and non-triviality audit");
  audit_decomp->add_option("--graph", graph_path, "3-graph JSON")->required();
  audit_decomp->add_option("--decomp", decomp_path, "Decomposition JSON")->required();
  audit_decomp->add_option("--eps1", eps1, "Triad threshold")->check(CLI::NonNegativeNumber);
  audit_decomp->add_option("--eps2", eps2, "Pair threshold")->check(CLI::NonNegativeNumber);
  audit_decomp->add_option("--mu", mu, "Homogeneity and triviality parameter")->check(CLI::NonNegativeNumber);
  audit_decomp->add_option("--csv", csv_path, "Per-triad CSV table");
  audit_decomp->add_flag("--no-triads", no_triads, "Omit per-triad rows from the JSON report");
  audit_decomp->add_option("--out", out_path, "Report file (default stdout)");
  audit_decomp->add_option("--manifest", manifest_path, "Write a manifest here");
  audit_decomp->callback([&] {
    active = audit_decomp;
    command = "audit decomp";
    action = [&] {
      const ThreeGraph h = io::threegraph_from_json(io::read_json(graph_path));
      const Decomposition p = io::decomposition_from_json(io::read_json(decomp_path));
      const auto a = audit(h, p, eps1, eps2, mu);
      json j = io::report(a);
      j["nontrivial"] = [&] {
        const auto nt = nontrivial_coverage(p, mu);
        return json{{"coverage", nt.coverage}, {"bound", nt.bound}, {"bound_holds", nt.bound_holds}};
      }();
      if (no_triads) j.erase("triads");
      if (!csv_path.empty()) session.emit("--csv", csv_path, triad_csv(a.triads));
      session.emit("--out", out_path, io::dump(j));
      return kExitOk;
    };
  });

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "Quotient a bigraph by identical rows and columns");
  reduce_cmd->add_option("--input", input_path, "Bigraph JSON")->required();
  reduce_cmd->add_option("--out", out_path, "Report file (default stdout)");
  reduce_cmd->add_option("--manifest", manifest_path, "Write a manifest here");
  reduce_cmd->callback([&] {
    active = reduce_cmd;
    command = "reduce";
    action = [&] {
      const auto q = sim_quotient(io::bigraph_from_json(io::read_json(input_path)));
      session.emit("--out", out_path, io::dump(io::report(q)));
      return kExitOk;
    };
  });

  // vc2
  std::size_t cap = 2, trials = 10000;
  auto* vc2_cmd = app.add_subcommand("vc2", "VC2-dimension up to a cap");
  vc2_cmd->add_option("--graph", graph_path, "3-graph JSON")->required();
  vc2_cmd->add_option("--cap", cap, "Largest k to try")->check(CLI::Range(1, 4));
  vc2_cmd->add_option("--trials", trials, "Random tuples per k > 2");
  vc2_cmd->add_option("--seed", seed, "Seed for randomized levels");
  vc2_cmd->add_option("--out", out_path, "Report file (default stdout)");
  vc2_cmd->add_option("--manifest", manifest_path, "Write a manifest here");
  vc2_cmd->callback([&] {
    active = vc2_cmd;
    command = "vc2";
    seeded = vc2_cmd->count("--seed") > 0;
    action = [&] {
      if (cap > kVc2ExhaustiveMax && !seeded) throw DomainError("--cap above 2 samples tuples and needs --seed");
      const auto h = io::threegraph_from_json(io::read_json(graph_path));
      session.emit("--out", out_path, io::dump(io::report(vc2(h, cap, trials, seed))));
      return kExitOk;
    };
  });

  // find
  std::string host_path, pattern_spec, ecb_path;
  std::size_t budget = 0, canonical_k = 0;
  auto* find_cmd = app.add_subcommand("find", "Induced or E0/E1 pattern search");
  find_cmd->add_option("--host", host_path, "Host bigraph JSON");
  find_cmd->add_option("--ecb", ecb_path, "Host edge-colored bigraph JSON (E0/E1 copy)");
  find_cmd->add_option("--pattern", pattern_spec, "KIND:K or a bigraph JSON file");
  find_cmd->add_option("--canonical", canonical_k, "Try H(k), M(k), Mbar(k) in an irreducible host");
  find_cmd->add_option("--budget", budget, "Search node budget (0 = unbounded)");
  find_cmd->add_option("--out", out_path, "Report file (default stdout)");
  find_cmd->add_option("--manifest", manifest_path, "Write a manifest here");
  find_cmd->callback([&] {
    active = find_cmd;
    command = "find";
    action = [&] {
      if (host_path.empty() == ecb_path.empty()) throw DomainError("give exactly one of --host and --ecb");
      if (!ecb_path.empty()) {
        if (pattern_spec.empty()) throw DomainError("--ecb needs --pattern");
        const auto g = io::ecb_from_json(io::read_json(ecb_path));
        session.emit("--out", out_path, io::dump(io::report(find_e0e1_copy(g, parse_base(pattern_spec), budget))));
        return kExitOk;
      }
      const auto host = io::bigraph_from_json(io::read_json(host_path));
      if (canonical_k > 0) {
        session.emit("--out", out_path, io::dump(io::report(find_canonical(host, canonical_k, budget))));
        return kExitOk;
      }
      if (pattern_spec.empty()) throw DomainError("give --pattern or --canonical");
      session.emit("--out", out_path, io::dump(io::report(find_induced(host, parse_base(pattern_spec), budget))));
      return kExitOk;
    };
  });

  // corner
  double lo = 0.5, hi = 0.5;
  std::optional<double> corner_eps1;
  bool equitable = false;
  auto* corner_cmd = app.add_subcommand("corner", "Corner graphs of a decomposition");
  corner_cmd->add_option("--graph", graph_path, "3-graph JSON")->required();
  corner_cmd->add_option("--decomp", decomp_path, "Decomposition JSON")->required();
  corner_cmd->add_option("--eps2", eps2, "Class threshold")->check(CLI::NonNegativeNumber);
  corner_cmd->add_option("--lo", lo, "E0 when density <= lo")->check(CLI::Range(0.0, 1.0));
  corner_cmd->add_option("--hi", hi, "E1 when density >= hi")->check(CLI::Range(0.0, 1.0));
  corner_cmd->add_option("--eps1", corner_eps1, "Send irregular triads to E2");
  corner_cmd->add_flag("--equitable", equitable, "Classes must pass dev2(eps2, 1/ell)");
  corner_cmd->add_option("--out", out_path, "Report file (default stdout)");
  corner_cmd->add_option("--manifest", manifest_path, "Write a manifest here");
  corner_cmd->callback([&] {
    active = corner_cmd;
    command = "corner";
    action = [&] {
      const auto h = io::threegraph_from_json(io::read_json(graph_path));
      const auto p = io::decomposition_from_json(io::read_json(decomp_path));
      CornerParams cp{eps2, lo, hi, corner_eps1, equitable};
      json j = io::envelope("corner_graphs");
      json list = json::array();
      for (const auto& g : corner_graphs(h, p, cp)) list.push_back(io::report(g));
      j["graphs"] = list;
      session.emit("--out", out_path, io::dump(j));
      return kExitOk;
    };
  });

  // cluster
  double delta = 0.1, eps = 0.01;
  auto* cluster_cmd = app.add_subcommand("cluster", "First-fit clustering of a three-colored bigraph");
  cluster_cmd->add_option("--ecb", ecb_path, "Edge-colored bigraph JSON")->required();
  cluster_cmd->add_option("--delta", delta, "Cluster radius as a fraction of |V|");
  cluster_cmd->add_option("--eps", eps, "Exceptional rows have more than sqrt(eps)|V| E2 entries");
  cluster_cmd->add_option("--out", out_path, "Report file (default stdout)");
  cluster_cmd->add_option("--manifest", manifest_path, "Write a manifest here");
  cluster_cmd->callback([&] {
    active = cluster_cmd;
    command = "cluster";
    action = [&] {
      const auto g = io::ecb_from_json(io::read_json(ecb_path));
      session.emit("--out", out_path, io::dump(io::report(haussler_cluster(g, delta, eps))));
      return kExitOk;
    };
  });

  // refine
  GroupParams gp;
  std::optional<double> refine_delta;
  auto* refine_cmd = app.add_subcommand("refine", "Group colors of a decomposition under a cap");
  refine_cmd->add_option("--graph", graph_path, "3-graph JSON")->required();
  refine_cmd->add_option("--decomp", decomp_path, "Decomposition JSON")->required();
  refine_cmd->add_option("--cap", gp.cap, "Largest allowed number of colors")->required()->check(CLI::PositiveNumber);
  refine_cmd->add_option("--eps1", gp.eps1, "Triad regularity threshold");
  refine_cmd->add_option("--eps2", gp.eps2, "Class threshold");
  refine_cmd->add_option("--hom", gp.hom, "Dense/sparse band, in (0, 1/2)");
  refine_cmd->add_option("--delta", refine_delta, "Cluster radius (default hom/10)");
  refine_cmd->add_option("--mu", gp.mu, "Triviality parameter");
  refine_cmd->add_option("--psi-threshold", gp.psi_threshold, "Bad-pair threshold");
  refine_cmd->add_option("--cluster-eps", gp.cluster_eps, "Exceptional-row parameter");
  refine_cmd->add_option("--out", out_path, "Grouped decomposition JSON")->required();
  refine_cmd->add_option("--report", report_path, "Report file (default stdout)");
  refine_cmd->add_option("--manifest", manifest_path, "Write a manifest here");
  refine_cmd->callback([&] {
    active = refine_cmd;
    command = "refine";
    action = [&] {
      const auto h = io::threegraph_from_json(io::read_json(graph_path));
      const auto p = io::decomposition_from_json(io::read_json(decomp_path));
      gp.delta = refine_delta;
      try {
        const auto g = group_colors(h, p, gp);
        session.emit("--out", out_path, io::dump(io::to_json(g.result)));
        session.emit("--report", report_path, io::dump(io::report(g)));
        return kExitOk;
      } catch (const CapExceeded& e) {
        session.emit("--report", report_path, io::dump(io::report(e)));
        session.err() << "hyperreg: " << e.what() << "\n";
        return kExitAnalytic;
      }
    };
  });

  // demo
  std::string demo_kind;
  std::vector<std::size_t> sizes;
  std::size_t demo_n = 64;
  seed = 0;
  auto* demo_cmd = app.add_subcommand("demo", "End-to-end demonstrations");
  demo_cmd->add_option("kind", demo_kind, "constant, polynomial or exponential")
      ->required()
      ->check(CLI::IsMember({"constant", "polynomial", "exponential"}));
  demo_cmd->add_option("--size", sizes, "L values (constant, polynomial) or K values (exponential)");
  demo_cmd->add_option("--n", demo_n, "|A| = |B|")->check(CLI::PositiveNumber);
  demo_cmd->add_option("--seed", seed, "Random seed (default 0)");
  demo_cmd->add_option("--out", out_path, "Report file (default stdout)");
  demo_cmd->add_option("--manifest", manifest_path, "Write a manifest here");
  demo_cmd->callback([&] {
    active = demo_cmd;
    command = "demo " + demo_kind;
    seeded = true;
    action = [&] {
      json j = io::envelope("demo_report");
      j["kind"] = demo_kind;
      j["n"] = demo_n;
      j["seed"] = seed;
      json rows = json::array();
      bool pass = true;
      if (demo_kind == "constant") {
        if (sizes.empty()) sizes = {2};
        for (std::size_t L : sizes) {
          const auto lb = lower_bound_instance(CanonicalKind::M, L, demo_n, seed);
          const auto split = split_colors(lb.instance.natural, 2, seed + 2);
          GroupParams prm;
          prm.cap = L;
          const auto g = group_colors(lb.instance.graph, split, prm);
          const bool ok = g.ell_out == L && g.result == lb.instance.natural && g.homogeneity.coverage >= 0.9;
          pass = pass && ok;
          rows.push_back(json{{"L", L}, {"ell_in", split.ell()}, {"ell_out", g.ell_out},
                              {"recovered", g.result == lb.instance.natural},
                              {"homogeneity", g.homogeneity.coverage}, {"pass", ok}});
        }
      } else if (demo_kind == "polynomial") {
        if (sizes.empty()) sizes = {2, 3, 4};
        for (std::size_t L : sizes) {
          const auto lb = lower_bound_instance(CanonicalKind::M, L, demo_n, seed);
          json row{{"L", L}};
          GroupParams prm;
          prm.cap = L;
          const auto g = group_colors(lb.instance.graph, lb.instance.natural, prm);
          row["cap_L"] = json{{"ell_out", g.ell_out}, {"homogeneity", g.homogeneity.coverage}};
          bool ok = g.ell_out <= L && g.homogeneity.coverage >= 0.9;
          if (L > 1) {
            prm.cap = L - 1;
            try {
              group_colors(lb.instance.graph, lb.instance.natural, prm);
              row["cap_L_minus_1"] = json{{"failed", false}};
              ok = false;
            } catch (const CapExceeded& e) {
              row["cap_L_minus_1"] = json{{"failed", true}, {"detail", io::report(e)}};
            }
          }
          row["pass"] = ok;
          pass = pass && ok;
          rows.push_back(row);
        }
      } else {
        if (sizes.empty()) sizes = {2};
        for (std::size_t K : sizes) {
          const auto lb = lower_bound_instance(CanonicalKind::Ubg, K, demo_n, seed);
          json merges = json::array();
          bool ok = true;
          const std::size_t colors = lb.instance.base.u_size();
          for (std::size_t u = 0; u < colors; ++u)
            for (std::size_t u2 = u + 1; u2 < colors; ++u2) {
              const auto m = merge_colors_demo(lb.instance, u, u2);
              const double d = to_double(m.density);
              ok = ok && d >= 0.4 && d <= 0.6;
              merges.push_back(io::report(m));
            }
          const auto hom = homogeneity_audit(lb.instance.graph, lb.instance.natural, 0.1);
          ok = ok && hom.coverage >= 0.9;
          pass = pass && ok;
          rows.push_back(json{{"K", K}, {"merges", merges}, {"natural_homogeneity", hom.coverage}, {"pass", ok}});
        }
      }
      j["rows"] = rows;
      j["pass"] = pass;
      session.emit("--out", out_path, io::dump(j));
      return pass ? kExitOk : kExitAnalytic;
    };
  });

  // ack
  std::size_t ack_k = 2;
  std::string ack_x, convention = "def";
  bool wowzer_flag = false, tower_flag = false, as_json = false;
  AckOptions ack_opt;
  auto* ack_cmd = app.add_subcommand("ack", "Ackermann hierarchy, tower and wowzer values");
  ack_cmd->add_option("--k", ack_k, "Level k of Ack_k")->check(CLI::PositiveNumber);
  ack_cmd->add_option("--x", ack_x, "Argument")->required();
  ack_cmd->add_flag("--tower", tower_flag, "Tw(x)");
  ack_cmd->add_flag("--wowzer", wowzer_flag, "W(x)");
  ack_cmd->add_option("--convention", convention, "Wowzer convention: def or ack3")
      ->check(CLI::IsMember({"def", "ack3"}));
  ack_cmd->add_option("--bit-limit", ack_opt.bit_limit, "Saturate beyond this many bits");
  ack_cmd->add_option("--base", ack_opt.base, "Ack_k(1) for k > 1");
  ack_cmd->add_flag("--json", as_json, "Print a JSON report");
  ack_cmd->callback([&] {
    active = ack_cmd;
    command = "ack";
    action = [&] {
      BigInt x;
      try {
        x = BigInt(ack_x);
      } catch (const std::exception&) {
        throw DomainError("--x must be an integer");
      }
      HyperValue v;
      if (wowzer_flag)
        v = wowzer(x, convention == "def" ? WowzerConvention::Def : WowzerConvention::Ack3, ack_opt);
      else if (tower_flag)
        v = tower(x, ack_opt);
      else
        v = ack(ack_k, x, ack_opt);
      session.out() << (as_json ? io::dump(io::report(v)) : v.to_string() + "\n");
      return kExitOk;
    };
  });

  // rerun
  std::string rerun_manifest, rerun_dir;
  auto* rerun_cmd = app.add_subcommand("rerun", "Re-execute a manifest and compare artifact hashes");
  rerun_cmd->add_option("--manifest", rerun_manifest, "Manifest JSON")->required();
  rerun_cmd->add_option("--out-dir", rerun_dir, "Directory for the re-run artifacts")->required();
  rerun_cmd->callback([&] {
    active = rerun_cmd;
    command = "rerun";
    action = [&] {
      const json m = io::read_json(rerun_manifest);
      io::expect(m, "manifest");
      if (!m.contains("argv") || !m["argv"].is_array() || !m.contains("artifacts")) throw IoError("manifest is incomplete");
      auto argv = m["argv"].get<std::vector<std::string>>();
      ensure_dir(rerun_dir);
      std::map<std::string, std::string> replaced;
      for (const auto& a : m["artifacts"]) {
        const auto option = a.at("option").get<std::string>();
        const auto name = a.at("name").get<std::string>();
        const std::string value = a.at("directory").get<bool>() ? rerun_dir : (fs::path(rerun_dir) / name).string();
        if (replaced.emplace(option, value).second) replace_option(argv, option, value);
      }
      std::ostringstream sink_out, sink_err;
      const int code = run(argv, sink_out, sink_err);
      json r = io::envelope("rerun_report");
      r["exit_code"] = code;
      json arts = json::array();
      bool all = code == kExitOk;
      for (const auto& a : m["artifacts"]) {
        const auto name = a.at("name").get<std::string>();
        const fs::path path = fs::path(rerun_dir) / name;
        std::string actual;
        if (fs::exists(path)) actual = io::sha256_hex(io::read_file(path.string()));
        const bool match = actual == a.at("sha256").get<std::string>();
        all = all && match;
        arts.push_back(json{{"name", name}, {"expected", a.at("sha256")}, {"actual", actual}, {"match", match}});
      }
      r["artifacts"] = arts;
      r["identical"] = all;
      session.out() << io::dump(r);
      return all ? kExitOk : kExitAnalytic;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitDomain;
  }

  if (app.count("--threads") == 0) {
    if (const char* env = std::getenv("HYPERREG_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        err << "hyperreg: ignoring malformed HYPERREG_THREADS\n";
      }
    }
  }
  set_thread_count(threads);

  try {
    const int code = action();
    if (code == kExitOk && active) {
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      std::string target = manifest_path;
      if (manifest_in_out_dir) target = (fs::path(out_path) / "manifest.json").string();
      if (!target.empty()) {
        const json mj = manifest(args, command, options_of(active), seeded ? std::optional(seed) : std::nullopt,
                                 session.artifacts(), ms);
        io::write_file(target, io::dump(mj));
      }
    }
    return code;
  } catch (const GenerationError& e) {
    out << io::dump(io::report(e.report));
    err << "hyperreg: " << e.what() << "\n";
    return kExitAnalytic;
  } catch (const CapExceeded& e) {
    out << io::dump(io::report(e));
    err << "hyperreg: " << e.what() << "\n";
    return kExitAnalytic;
  } catch (const IoError& e) {
    err << "hyperreg: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "hyperreg: " << e.what() << "\n";
    return kExitDomain;
  } catch (const io::json::exception& e) {
    err << "hyperreg: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace hyperreg::cli
