#include "commands.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "diagalg/cover.hpp"
#include "diagalg/error.hpp"
#include "diagalg/mv.hpp"

namespace diagalg::cli {

namespace {

std::string torsion_text(const HomologyGroup& h) {
  std::string s;
  for (const auto& t : h.torsion) s += (s.empty() ? "" : " ") + t.get_str();
  return s;
}

FamilySpec resolve_family(const RunConfig& c) {
  std::string f = c.family;
  if (c.r) {
    if (f != "T" && f.rfind("T:", 0) != 0) throw InvalidArgument("--r only applies to the Tanabe family");
    f = "T:" + std::to_string(*c.r);
  }
  return FamilySpec::parse(f);
}

std::vector<Scalar> parse_deltas(const RunConfig& c, const RingSpec& ring, const FamilySpec& family) {
  if (c.deltas.empty()) throw InvalidArgument("--delta needs at least one value");
  std::vector<Scalar> out;
  for (const auto& d : c.deltas) out.push_back(Scalar::parse(ring, d));
  // δ plays no role for TPP and U.
  if (family.ignores_delta()) out.erase(out.begin() + 1, out.end());
  return out;
}

Json config_json(const RunConfig& c, const FamilySpec& family, const RingSpec& ring, int Q) {
  Json j;
  j["n"] = c.n;
  j["family"] = family.to_string();
  j["ring"] = ring.to_string();
  j["delta"] = c.deltas;
  j["Q"] = Q;
  return j;
}

BarOptions bar_options(const RunConfig& c) {
  BarOptions o;
  o.guard = c.guard;
  return o;
}

int truncation(const RunConfig& c, int fallback) {
  const int Q = c.Q.value_or(fallback);
  if (Q < 1) throw InvalidArgument("--Q must be at least 1");
  return Q;
}

CommandResult cmd_enumerate(const RunConfig& c) {
  const auto family = resolve_family(c);
  const auto basis = enumerate_basis(c.n, family);
  CommandResult r;
  r.json["command"] = "enumerate";
  r.json["n"] = c.n;
  r.json["family"] = family.to_string();
  r.json["count"] = basis.size();
  r.json["basis"] = Json::array();
  r.csv_header = {"index", "diagram"};
  std::ostringstream p;
  p << family.to_string() << " n=" << c.n << ": " << basis.size() << " diagrams\n";
  for (std::size_t k = 0; k < basis.size(); ++k) {
    r.json["basis"].push_back(basis[k].to_string());
    r.csv_rows.push_back({std::to_string(k), basis[k].to_string()});
    p << "  " << k << "  " << basis[k].to_string() << "\n";
  }
  r.pretty = p.str();
  return r;
}

CommandResult cmd_compose(const RunConfig& c) {
  if (c.diagrams.size() != 2) throw InvalidArgument("compose needs exactly two diagrams");
  const auto d1 = Diagram::parse(c.diagrams[0]);
  const auto d2 = Diagram::parse(c.diagrams[1]);
  const auto res = compose(d1, d2);
  CommandResult r;
  r.json["command"] = "compose";
  r.json["d1"] = d1.to_string();
  r.json["d2"] = d2.to_string();
  r.json["alpha"] = res.alpha;
  r.json["result"] = res.diagram.to_string();
  r.csv_header = {"d1", "d2", "alpha", "result"};
  r.csv_rows.push_back({d1.to_string(), d2.to_string(), std::to_string(res.alpha), res.diagram.to_string()});
  r.pretty = d1.to_string() + " * " + d2.to_string() + " = delta^" + std::to_string(res.alpha) + " " +
             res.diagram.to_string() + "\n";
  return r;
}

ContextPtr make_context(const RunConfig& c, const FamilySpec& family, const RingSpec& ring, const Scalar& delta) {
  return AlgebraContext::create(c.n, family, ring, delta);
}

CommandResult cmd_verify_cover(const RunConfig& c) {
  const auto family = resolve_family(c);
  const auto ring = RingSpec::parse(c.ring);
  const auto delta = parse_deltas(c, ring, family).front();
  const auto ctx = make_context(c, family, ring, delta);
  const auto report = verify_cover(CoverSpec::standard(ctx), c.height);
  CommandResult r;
  r.exit_code = report.passed() ? 0 : 1;
  r.json["command"] = "verify-cover";
  r.json["n"] = c.n;
  r.json["family"] = family.to_string();
  r.json["ring"] = ring.to_string();
  r.json["delta"] = delta.to_string();
  r.json["report"] = to_json(report);
  r.csv_header = {"S", "status", "dim", "generator"};
  std::ostringstream p;
  p << family.to_string() << " n=" << c.n << ": covers=" << (report.covers ? "true" : "false")
    << " width=" << report.width << " verified_height=" << report.verified_height
    << " failures=" << report.failures.size() << "\n";
  for (const auto& w : report.intersections) {
    const std::string gen = w.generator && w.status != WitnessStatus::Zero ? w.generator->to_string() : "";
    r.csv_rows.push_back({w.label, to_string(w.status), std::to_string(w.dim), gen});
    p << "  " << w.label << "  " << to_string(w.status) << "  dim=" << w.dim << (gen.empty() ? "" : "  e=" + gen) << "\n";
  }
  for (const auto& f : report.failures) p << "  FAILED " << f.subset << ": " << f.check << " " << f.diagram << "\n";
  r.pretty = p.str();
  return r;
}

CommandResult cmd_build_mv(const RunConfig& c) {
  const auto family = resolve_family(c);
  const auto ring = RingSpec::parse(c.ring);
  const auto delta = parse_deltas(c, ring, family).front();
  const auto ctx = make_context(c, family, ring, delta);
  const auto cover = CoverSpec::standard(ctx);
  const auto report = verify_cover(cover, c.height);
  const auto mv = build_mv(cover);
  const int through = report.verified_height;
  const auto exact = check_mv_exactness(mv, ring, through);
  const auto tensor = tensor_with_trivial(mv);

  bool ok = report.passed() && exact.surjective && exact.exactness.exact;
  CommandResult r;
  r.json["command"] = "build-mv";
  r.json["n"] = c.n;
  r.json["family"] = family.to_string();
  r.json["ring"] = ring.to_string();
  r.json["delta"] = delta.to_string();
  r.json["complex"] = to_json(mv);
  Json e;
  e["through"] = through;
  e["surjective"] = exact.surjective;
  e["exact"] = exact.exactness.exact;
  e["first_failing_degree"] = exact.exactness.first_failing_degree ? Json(*exact.exactness.first_failing_degree) : Json();
  r.json["exactness"] = e;
  r.json["trivial_tensor"] = Json::array();
  r.csv_header = {"p", "dim", "trivial_tensor_rank", "witness_rank"};
  std::ostringstream p;
  p << family.to_string() << " n=" << c.n << " over " << ring.to_string() << ": dims (C_-1..C_w) =";
  for (auto d : mv.complex.dims()) p << " " << d;
  p << "\n  surjective onto A/I: " << (exact.surjective ? "yes" : "no") << "\n  exact in degrees 0.." << through << ": "
    << (exact.exactness.exact ? "yes" : "no") << "\n";
  for (const auto& t : tensor) {
    if (t.p >= 1 && (!t.group.is_zero() || t.witness_rank != 0)) ok = false;
    if (t.p == 0 && t.group.free_rank != 1) ok = false;
    Json x = to_json(t.group);
    r.json["trivial_tensor"].push_back({{"p", t.p}, {"group", x}, {"witness_rank", t.witness_rank}});
    r.csv_rows.push_back({std::to_string(t.p), std::to_string(mv.complex.dim(t.p)), std::to_string(t.group.free_rank),
                          std::to_string(t.witness_rank)});
    p << "  1 (x) C_" << t.p << " = " << t.group.to_string(ring) << "\n";
  }
  r.exit_code = ok ? 0 : 1;
  r.pretty = p.str();
  return r;
}

void add_degree_rows(CommandResult& r, const FamilySpec& family, int n, const RingSpec& ring, const Scalar& delta,
                     const std::vector<HomologyGroup>& groups, std::ostringstream& p) {
  for (std::size_t q = 0; q < groups.size(); ++q) {
    r.csv_rows.push_back({family.to_string(), std::to_string(n), ring.to_string(), delta.to_string(), std::to_string(q),
                          std::to_string(groups[q].free_rank), torsion_text(groups[q])});
    p << "  q=" << q << "  " << groups[q].to_string(ring) << "\n";
  }
}

CommandResult cmd_tor_ext(const RunConfig& c, bool ext) {
  const auto family = resolve_family(c);
  const auto ring = RingSpec::parse(c.ring);
  const auto deltas = parse_deltas(c, ring, family);
  const int Q = truncation(c, default_truncation(c.n, ring));
  CommandResult r;
  r.json["command"] = ext ? "ext" : "tor";
  r.json["config"] = config_json(c, family, ring, Q);
  r.json["records"] = Json::array();
  r.csv_header = {"family", "n", "ring", "delta", "q", "free_rank", "torsion"};
  std::ostringstream p;
  for (const auto& delta : deltas) {
    const auto ctx = make_context(c, family, ring, delta);
    const auto groups = ext ? compute_ext(*ctx, Q, bar_options(c)) : compute_tor(*ctx, Q, bar_options(c));
    r.json["records"].push_back(results_record(*ctx, groups));
    p << (ext ? "Ext" : "Tor") << " of " << family.to_string() << " n=" << c.n << " over " << ring.to_string()
      << ", delta=" << delta.to_string() << "\n";
    add_degree_rows(r, family, c.n, ring, delta, groups, p);
  }
  r.pretty = p.str();
  return r;
}

CommandResult cmd_group_homology(const RunConfig& c) {
  const auto ring = RingSpec::parse(c.ring);
  const int Q = truncation(c, default_truncation(c.n, ring));
  const auto groups =
      c.cohomology ? group_cohomology(c.n, ring, Q, bar_options(c)) : group_homology(c.n, ring, Q, bar_options(c));
  CommandResult r;
  r.json["command"] = "group-homology";
  r.json["group"] = "S_" + std::to_string(c.n);
  r.json["kind"] = c.cohomology ? "cohomology" : "homology";
  r.json["ring"] = ring.to_string();
  r.json["Q"] = Q;
  r.json["degrees"] = degrees_json(groups);
  r.csv_header = {"group", "kind", "ring", "q", "free_rank", "torsion"};
  std::ostringstream p;
  p << (c.cohomology ? "H^q" : "H_q") << "(S_" << c.n << "; " << ring.to_string() << ")\n";
  for (std::size_t q = 0; q < groups.size(); ++q) {
    r.csv_rows.push_back({"S_" + std::to_string(c.n), c.cohomology ? "cohomology" : "homology", ring.to_string(),
                          std::to_string(q), std::to_string(groups[q].free_rank), torsion_text(groups[q])});
    p << "  q=" << q << "  " << groups[q].to_string(ring) << "\n";
  }
  r.pretty = p.str();
  return r;
}

struct TheoremRow {
  std::string delta;
  int q;
  std::string invariant;
  HomologyGroup left;
  HomologyGroup right;
};

CommandResult cmd_theorem(const RunConfig& c) {
  static const std::map<std::string, std::string> families = {
      {"tanabe", "T"}, {"tpp", "TPP"},         {"uniform", "U"}, {"partition", "P"}, {"partition-invertible", "P"},
      {"stability-range", "P"}};
  const auto it = families.find(c.theorem);
  if (it == families.end()) throw InvalidArgument("unknown theorem '" + c.theorem + "'");
  RunConfig cfg = c;
  cfg.family = it->second;
  if (c.theorem == "tanabe") {
    cfg.r = c.r.value_or(2);
  } else if (c.r) {
    throw InvalidArgument("--r only applies to theorem tanabe");
  }
  const auto family = resolve_family(cfg);
  const auto ring = RingSpec::parse(cfg.ring);
  if (!ring.supports_homology()) throw UnsupportedRing("theorem checks need Z or a field, got " + ring.to_string());
  const auto deltas = parse_deltas(cfg, ring, family);
  if (c.theorem == "partition-invertible")
    for (const auto& d : deltas) (void)d.inverse();  // NotInvertible before any computation

  const int n = cfg.n;
  int fallback = default_truncation(n, ring);
  if (c.theorem == "partition") fallback = n;
  if (c.theorem == "stability-range") fallback = (n - 1) / 2 + 1;
  const int Q = truncation(cfg, fallback);
  int through = Q - 1;
  if (c.theorem == "partition") through = std::min(Q - 1, n - 1);
  if (c.theorem == "stability-range") {
    if (n < 2) throw InvalidArgument("stability-range needs n >= 2");
    through = std::min(Q - 1, (n - 1) / 2);
  }

  std::vector<TheoremRow> rows;
  std::string left_label, right_label;
  if (c.theorem == "stability-range") {
    left_label = "Ext^q(P_" + std::to_string(n) + ")";
    right_label = "Ext^q(P_" + std::to_string(n - 1) + ")";
    for (const auto& delta : deltas) {
      const auto big = AlgebraContext::create(n, family, ring, delta);
      const auto small = AlgebraContext::create(n - 1, family, ring, delta);
      const auto a = compute_ext(*big, through + 1, bar_options(cfg));
      const auto b = compute_ext(*small, through + 1, bar_options(cfg));
      for (int q = 0; q <= through; ++q) rows.push_back({delta.to_string(), q, "ext", a[q], b[q]});
    }
  } else {
    left_label = family.to_string() + " n=" + std::to_string(n);
    right_label = "S_" + std::to_string(n);
    const auto gh = group_homology(n, ring, through + 1, bar_options(cfg));
    const auto gc = group_cohomology(n, ring, through + 1, bar_options(cfg));
    for (const auto& delta : deltas) {
      const auto ctx = AlgebraContext::create(n, family, ring, delta);
      const auto te = compute_tor_ext(*ctx, Q, bar_options(cfg));
      for (int q = 0; q <= through; ++q) rows.push_back({delta.to_string(), q, "tor", te.tor[q], gh[q]});
      for (int q = 0; q <= through; ++q) rows.push_back({delta.to_string(), q, "ext", te.ext[q], gc[q]});
    }
  }

  bool all = true;
  CommandResult r;
  r.json["command"] = "theorem";
  r.json["theorem"] = c.theorem;
  r.json["config"] = config_json(cfg, family, ring, Q);
  r.json["through"] = through;
  r.json["left"] = left_label;
  r.json["right"] = right_label;
  r.json["rows"] = Json::array();
  r.csv_header = {"family", "n", "ring", "delta", "q", "invariant", "left", "right", "match"};
  std::ostringstream p;
  p << "theorem " << c.theorem << ": " << left_label << " vs " << right_label << " over " << ring.to_string()
    << ", q <= " << through << "\n";
  for (const auto& row : rows) {
    const bool match = row.left == row.right;
    all = all && match;
    r.json["rows"].push_back({{"delta", row.delta},
                              {"q", row.q},
                              {"invariant", row.invariant},
                              {"left", to_json(row.left)},
                              {"right", to_json(row.right)},
                              {"match", match}});
    r.csv_rows.push_back({family.to_string(), std::to_string(n), ring.to_string(), row.delta, std::to_string(row.q),
                          row.invariant, row.left.to_string(ring), row.right.to_string(ring), match ? "true" : "false"});
    p << "  delta=" << row.delta << "  " << row.invariant << "  q=" << row.q << "  " << row.left.to_string(ring)
      << "  vs  " << row.right.to_string(ring) << "  " << (match ? "match" : "MISMATCH") << "\n";
  }
  r.json["match"] = all;
  p << (all ? "all degrees match\n" : "mismatch\n");
  r.pretty = p.str();
  r.exit_code = all ? 0 : 1;
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

CommandResult run_command(const RunConfig& config) {
  if (config.n < 1) throw InvalidArgument("--n must be at least 1");
  const auto& cmd = config.command;
  if (cmd == "enumerate") return cmd_enumerate(config);
  if (cmd == "compose") return cmd_compose(config);
  if (cmd == "verify-cover") return cmd_verify_cover(config);
  if (cmd == "build-mv") return cmd_build_mv(config);
  if (cmd == "tor") return cmd_tor_ext(config, false);
  if (cmd == "ext") return cmd_tor_ext(config, true);
  if (cmd == "group-homology") return cmd_group_homology(config);
  if (cmd == "theorem") return cmd_theorem(config);
  throw InvalidArgument("unknown command '" + cmd + "'");
}

std::string render(const CommandResult& result, Format format) {
  switch (format) {
    case Format::Json:
      return result.json.dump(2) + "\n";
    case Format::Csv: {
      std::string s;
      auto line = [&s](const std::vector<std::string>& fields) {
        for (std::size_t k = 0; k < fields.size(); ++k) s += (k ? "," : "") + csv_field(fields[k]);
        s += "\n";
      };
      line(result.csv_header);
      for (const auto& row : result.csv_rows) line(row);
      return s;
    }
    case Format::Pretty:
      return result.pretty;
  }
  return "";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diagram algebras, Mayer-Vietoris covers and Tor/Ext of trivial modules"};
  app.require_subcommand(1);
  RunConfig config;
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"pretty", Format::Pretty}};

  auto common = [&](CLI::App* sub, bool context) {
    if (context) {
      sub->add_option("--n", config.n, "Number of vertex pairs")->capture_default_str();
      sub->add_option("--family", config.family, "P, T:r, TPP or U")->capture_default_str();
      sub->add_option("--r", config.r, "Tanabe modulus r");
      sub->add_option("--delta", config.deltas, "Comma-separated parameter list")->delimiter(',');
    }
    sub->add_option("--ring", config.ring, "Z, Q or Z/m")->capture_default_str();
    sub->add_option("--format", config.format, "json, csv or pretty")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", config.out, "Write the report to this file");
  };
  auto bar = [&](CLI::App* sub) {
    sub->add_option("--Q", config.Q, "Truncation: degrees 0..Q-1 are reported");
    sub->add_option("--guard", config.guard, "Largest total bar complex rank")->capture_default_str();
  };

  auto* enumerate = app.add_subcommand("enumerate", "List the canonical basis");
  common(enumerate, true);
  auto* compose_cmd = app.add_subcommand("compose", "Compose two diagrams");
  common(compose_cmd, false);
  compose_cmd->add_option("diagrams", config.diagrams, "Two diagrams such as 2:{1 -1}|{2 -2}")->expected(2)->required();
  auto* cover = app.add_subcommand("verify-cover", "Check the idempotent left cover of I_{n-1}");
  common(cover, true);
  cover->add_option("--height", config.height, "Largest subset size to check");
  auto* mv = app.add_subcommand("build-mv", "Build and check the Mayer-Vietoris complex");
  common(mv, true);
  mv->add_option("--height", config.height, "Largest subset size for the cover check");
  auto* tor = app.add_subcommand("tor", "Tor of the trivial module");
  common(tor, true);
  bar(tor);
  auto* ext = app.add_subcommand("ext", "Ext of the trivial module");
  common(ext, true);
  bar(ext);
  auto* group = app.add_subcommand("group-homology", "Homology of the symmetric group");
  common(group, false);
  group->add_option("--n", config.n, "Symmetric group degree")->capture_default_str();
  group->add_flag("--cohomology", config.cohomology, "Report cohomology instead");
  bar(group);
  auto* theorem = app.add_subcommand("theorem", "Compare the algebra with the symmetric group");
  common(theorem, true);
  bar(theorem);
  theorem
      ->add_option("name", config.theorem,
                   "tanabe, tpp, uniform, partition, partition-invertible or stability-range")
      ->required()
      ->check(CLI::IsMember({"tanabe", "tpp", "uniform", "partition", "partition-invertible", "stability-range"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    const auto result = run_command(config);
    const auto text = render(result, config.format);
    if (config.out.empty()) {
      out << text;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file || !(file << text)) {
        err << "error: cannot write " << config.out << "\n";
        return 2;
      }
    }
    return result.exit_code;
  } catch (const ResourceGuard& e) {
    err << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const ConsistencyError& e) {
    err << "consistency check failed: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace diagalg::cli
