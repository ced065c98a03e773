#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "duality/bridge.hpp"
#include "duality/criticality.hpp"
#include "duality/errors.hpp"
#include "duality/grassmann.hpp"
#include "duality/ising.hpp"
#include "duality/kasteleyn.hpp"
#include "duality/spinnet.hpp"

using namespace duality;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct GraphSource {
  std::string file, name;
  PlanarGraph load() const {
    if (!file.empty() && !name.empty()) throw CLI::ValidationError("--graph and --generate are exclusive");
    if (!file.empty()) return load_graph_file(file);
    if (!name.empty()) return generate(name);
    throw CLI::RequiredError("--graph or --generate");
  }
};

void add_graph_options(CLI::App* app, GraphSource& src) {
  app->add_option("--graph", src.file, "graph file");
  app->add_option("--generate", src.name, "built-in graph: theta, k4, prism3, cube, dodecahedron");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "p/q" for every edge, or a comma list with one value per edge; an optional "Y=" prefix is ignored.
std::vector<Rational> parse_couplings(const PlanarGraph& g, std::string text) {
  if (text.rfind("Y=", 0) == 0) text = text.substr(2);
  auto parts = split(text, ',');
  std::vector<Rational> Y;
  for (const auto& p : parts) Y.push_back(parse_rational(p));
  if (Y.size() == 1) Y.assign(g.num_edges(), Y[0]);
  if (static_cast<int>(Y.size()) != g.num_edges())
    throw CLI::ValidationError("--Y", "expected one value or one value per edge");
  return Y;
}

int parse_edge(const PlanarGraph& g, long id) {
  const int e = g.edge_index(id);
  if (e < 0) throw CLI::ValidationError("--edge", "unknown edge id " + std::to_string(id));
  return e;
}

std::string monomial_text(const PlanarGraph& g, const Exponents& ex) {
  std::string s;
  for (size_t i = 0; i < ex.size(); ++i)
    if (ex[i]) s += (s.empty() ? "" : " ") + std::string("Y") + std::to_string(g.edge_id(i)) + "^" + std::to_string(ex[i]);
  return s.empty() ? "1" : s;
}

json rational_json(const Rational& q) { return to_string(q); }

struct Output {
  bool as_json = false;
  json doc;
  std::ostringstream text;
  void emit(const std::string& command) {
    if (as_json) {
      json full;
      full["schema_version"] = kSchemaVersion;
      full["command"] = command;
      for (auto& [k, v] : doc.items()) full[k] = v;
      std::cout << full.dump(2) << "\n";
    } else {
      std::cout << text.str();
    }
  }
};

struct CheckRow {
  std::string name;
  bool pass;
  std::string detail;
};

int emit_checks(Output& out, const std::vector<CheckRow>& rows) {
  bool all = true;
  json arr = json::array();
  for (const auto& r : rows) {
    all &= r.pass;
    out.text << std::left << std::setw(28) << r.name << (r.pass ? "PASS" : "FAIL") << "  " << r.detail << "\n";
    arr.push_back({{"identity", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  out.doc["checks"] = arr;
  out.doc["all_pass"] = all;
  if (!all)
    for (const auto& r : rows)
      if (!r.pass) std::cerr << "failed: " << r.name << "\n";
  return all ? 0 : 1;
}

std::vector<CheckRow> bridge_checks(const PlanarGraph& g, const std::vector<Rational>& Y, bool all_edges, int edge) {
  std::vector<CheckRow> rows;
  auto fe = verify_fundamental_equality(g, Y, 30);
  std::ostringstream d;
  d << "P=" << to_string(fe.p) << " series=" << std::setprecision(12) << fe.series_sum << " tail<=" << fe.tail_bound;
  rows.push_back({"fundamental_equality", fe.ok(), d.str()});
  bool nonneg = true;
  for (const auto& y : Y) nonneg &= y >= 0;
  if (nonneg) {
    auto lp = check_loop_products(g, Y, edges_to_angles(g, Y));
    rows.push_back({"angle_loop_products", lp.ok, std::to_string(lp.cycles) + " cycles"});
  }
  std::vector<int> edges;
  if (all_edges)
    for (int e = 0; e < g.num_edges(); ++e) edges.push_back(e);
  else
    edges.push_back(edge);
  bool ms = true, fd = true, mt = true;
  std::string ms_detail, mt_detail;
  for (int e : edges) {
    auto c = verify_mean_spin_bridge(g, Y, e);
    ms &= c.ok;
    if (ms_detail.empty()) ms_detail = "<j>=" + to_string(c.lhs) + " on edge " + std::to_string(g.edge_id(e));
    fd &= verify_first_derivative(g, Y, e).ok;
    try {
      auto m = moment_theorem(g, Y, e, 5);
      if (!m.ok()) {
        mt = false;
        mt_detail = m.discrepancies.front();
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DivergentTail) throw;
      mt_detail = "divergent tail on edge " + std::to_string(g.edge_id(e)) + " (distribution skipped)";
    }
  }
  rows.push_back({"mean_spin_bridge", ms, ms_detail});
  rows.push_back({"first_derivative", fd, std::to_string(edges.size()) + " edges"});
  rows.push_back({"moment_theorem", mt, mt_detail.empty() ? "n<=5" : mt_detail});
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ising / spin-network duality toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.as_json, "machine-readable output");

  GraphSource src;
  std::string ystr = "0", norm = "integral", colors, form = "real", triangles, csv_out, variant = "corrected";
  long edge_id = 1;
  int degree = 4, max_color = 2, outer_face = 0;
  bool all_edges = false;
  double from = 0.05, to = 1.7, step = 0.01;

  auto* graph_cmd = app.add_subcommand("graph", "load or generate a graph and print it");
  add_graph_options(graph_cmd, src);

  auto* kast_cmd = app.add_subcommand("kasteleyn", "construct and check a Kasteleyn orientation");
  add_graph_options(kast_cmd, src);
  kast_cmd->add_option("--outer-face", outer_face, "outer face index");

  auto* ising_cmd = app.add_subcommand("ising", "Ising partition function and correlations");
  auto* ising_z = ising_cmd->add_subcommand("z", "normalized partition function");
  auto* ising_corr = ising_cmd->add_subcommand("corr", "nearest-neighbour correlation");
  auto* ising_poly = ising_cmd->add_subcommand("poly", "loop polynomial P");
  ising_cmd->require_subcommand(1);
  for (auto* c : {ising_z, ising_corr, ising_poly}) add_graph_options(c, src);
  for (auto* c : {ising_z, ising_corr}) {
    c->add_option("--Y,--coupling", ystr, "coupling p/q (uniform) or comma list per edge")->required();
  }
  ising_corr->add_option("--edge", edge_id, "edge id")->required();

  auto* grass_cmd = app.add_subcommand("grassmann", "Berezin integral representations");
  add_graph_options(grass_cmd, src);
  grass_cmd->add_option("--form", form, "real | complex | squared")->check(CLI::IsMember({"real", "complex", "squared"}));

  auto* spin_cmd = app.add_subcommand("spinnet", "spin network evaluations");
  spin_cmd->require_subcommand(1);
  auto* spin_eval = spin_cmd->add_subcommand("eval", "evaluate one colouring");
  auto* spin_series = spin_cmd->add_subcommand("series", "generating series coefficients");
  auto* spin_compare = spin_cmd->add_subcommand("compare", "tensor evaluation against the series");
  for (auto* c : {spin_eval, spin_series, spin_compare}) add_graph_options(c, src);
  spin_eval->add_option("--colors", colors, "c1,c2,... (c_e = 2 j_e)")->required();
  spin_eval->add_option("--norm", norm, "tensor | integral | unitary | skein")
      ->check(CLI::IsMember({"tensor", "integral", "unitary", "skein"}));
  spin_series->add_option("--degree", degree, "total degree cutoff")->check(CLI::NonNegativeNumber);
  spin_compare->add_option("--max-color", max_color, "largest colour")->check(CLI::NonNegativeNumber);

  auto* bridge_cmd = app.add_subcommand("bridge", "duality identities");
  bridge_cmd->require_subcommand(1);
  auto* bridge_verify = bridge_cmd->add_subcommand("verify", "pass/fail table per identity");
  add_graph_options(bridge_verify, src);
  bridge_verify->add_option("--Y,--coupling", ystr, "coupling p/q or comma list")->required();
  bridge_verify->add_option("--edge", edge_id, "edge id for single-edge identities");
  bridge_verify->add_flag("--all", all_edges, "run single-edge identities on every edge");

  auto* crit_cmd = app.add_subcommand("crit", "criticality");
  crit_cmd->require_subcommand(1);
  auto* crit_hex = crit_cmd->add_subcommand("hex", "hexagonal-lattice mean colour curve");
  crit_hex->add_option("--from", from);
  crit_hex->add_option("--to", to);
  crit_hex->add_option("--step", step)->check(CLI::PositiveNumber);
  crit_hex->add_option("--out", csv_out, "CSV path (stdout when omitted)");
  crit_hex->add_option("--variant", variant, "corrected | literal")->check(CLI::IsMember({"corrected", "literal"}));
  auto* crit_stat = crit_cmd->add_subcommand("stationary", "stationary couplings from triangle pairs");
  crit_stat->add_option("--triangles", triangles, "lines: l l1 l2 m1 m2")->required()->check(CLI::ExistingFile);
  auto* crit_yc = crit_cmd->add_subcommand("yc", "critical coupling from k(y) = 1");

  auto* verify_cmd = app.add_subcommand("verify-all", "full identity suite");
  add_graph_options(verify_cmd, src);
  verify_cmd->add_option("--Y,--coupling", ystr, "coupling p/q or comma list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (graph_cmd->parsed()) {
      auto g = src.load();
      out.doc["vertices"] = g.num_vertices();
      out.doc["edges"] = g.num_edges();
      out.doc["faces"] = g.num_faces();
      out.doc["text"] = to_text(g);
      out.text << "# V=" << g.num_vertices() << " E=" << g.num_edges() << " F=" << g.num_faces() << "\n" << to_text(g);
      out.emit("graph");
      return 0;
    }
    if (kast_cmd->parsed()) {
      auto g = src.load();
      auto o = make_kasteleyn(g, outer_face);
      auto rep = is_kasteleyn(g, o);
      auto lemma = check_cycle_lemma(g, o, outer_face);
      json edges = json::array();
      for (int e = 0; e < g.num_edges(); ++e) {
        const long s = g.vertex_id(g.vertex(g.src_half(e, o))), t = g.vertex_id(g.vertex(g.dst_half(e, o)));
        out.text << "edge " << g.edge_id(e) << " " << s << " " << t << "\n";
        edges.push_back({g.edge_id(e), s, t});
      }
      out.doc["orientation"] = edges;
      std::vector<CheckRow> rows{{"kasteleyn", rep.ok, std::to_string(g.num_faces()) + " faces"},
                                 {"cycle_lemma", lemma.ok, std::to_string(lemma.cycles_checked) + " cycles"}};
      const int rc = emit_checks(out, rows);
      out.emit("kasteleyn");
      return rc;
    }
    if (ising_cmd->parsed()) {
      auto g = src.load();
      if (ising_poly->parsed()) {
        auto p = p_gamma(g);
        out.doc["p_gamma"] = p.to_string(g.variable_names());
        out.text << p.to_string(g.variable_names()) << "\n";
        out.emit("ising poly");
        return 0;
      }
      auto Y = parse_couplings(g, ystr);
      if (ising_z->parsed()) {
        auto z = z_ising_bruteforce(g, Y);
        out.doc["z"] = rational_json(z);
        out.text << to_string(z) << "\n";
        out.emit("ising z");
      } else {
        auto c = nn_correlation(g, Y, parse_edge(g, edge_id));
        out.doc["correlation"] = rational_json(c);
        out.text << to_string(c) << "\n";
        out.emit("ising corr");
      }
      return 0;
    }
    if (grass_cmd->parsed()) {
      auto g = src.load();
      auto o = make_kasteleyn(g);
      SparsePoly z = form == "real" ? z_f(g, o) : form == "complex" ? z_f_complex(g, o) : z_f_squared(g, o);
      SparsePoly p = p_gamma(g);
      SparsePoly expect = form == "squared" ? p * p : p;
      out.doc["form"] = form;
      out.doc["z_f"] = z.to_string(g.variable_names());
      out.text << z.to_string(g.variable_names()) << "\n";
      const int rc = emit_checks(out, {{"grassmann_" + form, z == expect, form == "squared" ? "= P^2" : "= P"}});
      out.emit("grassmann");
      return rc;
    }
    if (spin_cmd->parsed()) {
      auto g = src.load();
      if (spin_series->parsed()) {
        auto s = z_spin_series(g, degree);
        json coeffs = json::array();
        for (const auto& [ex, c] : s.poly.terms()) {
          out.text << to_string(c) << " " << monomial_text(g, ex) << "\n";
          coeffs.push_back({{"monomial", monomial_text(g, ex)}, {"coefficient", to_string(c)}});
        }
        out.doc["degree"] = degree;
        out.doc["coefficients"] = coeffs;
        out.emit("spinnet series");
        return 0;
      }
      auto o = make_kasteleyn(g);
      if (spin_eval->parsed()) {
        Coloring col;
        for (const auto& c : split(colors, ',')) col.push_back(std::stoi(c));
        if (static_cast<int>(col.size()) != g.num_edges())
          throw CLI::ValidationError("--colors", "one colour per edge required");
        const Normalization n = norm == "tensor"    ? Normalization::Tensor
                                : norm == "unitary" ? Normalization::Unitary
                                : norm == "skein"   ? Normalization::Skein
                                                    : Normalization::Integral;
        auto r = evaluate(g, o, col, n);
        out.doc["norm"] = norm;
        out.doc["value"] = r.value;
        out.doc["error"] = r.error;
        if (r.exact) out.doc["exact"] = to_string(*r.exact);
        out.text << std::setprecision(15) << r.value << " +- " << r.error;
        if (r.exact) out.text << " (exact " << to_string(*r.exact) << ")";
        out.text << "\n";
        out.emit("spinnet eval");
        return 0;
      }
      auto rep = verify_comparison_theorem(g, o, max_color);
      std::ostringstream d;
      d << rep.colorings << " colourings, max error " << std::setprecision(3) << rep.max_error;
      std::vector<CheckRow> rows{{"comparison_theorem", rep.ok, d.str()}};
      if (rep.only_if_checked) rows.push_back({"non_kasteleyn_detected", rep.only_if_detected, "single-edge flips"});
      const int rc = emit_checks(out, rows);
      out.emit("spinnet compare");
      return rc;
    }
    if (bridge_verify->parsed()) {
      auto g = src.load();
      auto Y = parse_couplings(g, ystr);
      const int rc = emit_checks(out, bridge_checks(g, Y, all_edges, parse_edge(g, edge_id)));
      out.emit("bridge verify");
      return rc;
    }
    if (crit_cmd->parsed()) {
      if (crit_hex->parsed()) {
        const HexVariant v = variant == "literal" ? HexVariant::Literal : HexVariant::Corrected;
        auto rows = emit_curve(from, to, step, v);
        const std::string csv = curve_csv(rows);
        if (!csv_out.empty()) {
          std::ofstream f(csv_out);
          f << csv;
          if (!f) throw CLI::ValidationError("--out", "cannot write " + csv_out);
        }
        long flagged = 0;
        json arr = json::array();
        for (const auto& r : rows) {
          flagged += r.near_critical;
          arr.push_back({{"y", r.y}, {"g", r.g}, {"mean_j_plus_half", r.mean_j_plus_half},
                         {"dj_dbeta", r.dj_dbeta}, {"near_critical", r.near_critical}});
        }
        out.doc["variant"] = hex_variant_name(v);
        out.doc["y_c"] = hex_critical_coupling();
        out.doc["near_critical_rows"] = flagged;
        out.doc["rows"] = arr;
        if (csv_out.empty())
          out.text << csv;
        else
          out.text << rows.size() << " rows written to " << csv_out << " (variant " << hex_variant_name(v) << ")\n";
        out.emit("crit hex");
        return 0;
      }
      if (crit_stat->parsed()) {
        std::ifstream f(triangles);
        std::string line;
        json arr = json::array();
        bool all = true;
        while (std::getline(f, line)) {
          if (line.empty() || line[0] == '#') continue;
          std::istringstream ls(line);
          double l, l1, l2, m1, m2;
          if (!(ls >> l >> l1 >> l2 >> m1 >> m2)) throw Error(ErrorKind::Parse, "expected five side lengths: " + line);
          const double t = coupling_tangent_form(l, l1, l2, m1, m2), r = coupling_ratio_form(l, l1, l2, m1, m2);
          const bool ok = std::abs(t - r) <= 1e-12;
          all &= ok;
          out.text << std::setprecision(15) << t << " " << r << (ok ? "" : "  MISMATCH") << "\n";
          arr.push_back({{"Y_tangent", t}, {"Y_ratio", r}, {"agree", ok}});
        }
        out.doc["couplings"] = arr;
        out.emit("crit stationary");
        return all ? 0 : 1;
      }
      if (crit_yc->parsed()) {
        const double yc = hex_critical_coupling();
        out.doc["y_c"] = yc;
        out.doc["tanh_y_c"] = std::tanh(yc);
        out.text << std::setprecision(15) << "y_c = " << yc << "  tanh y_c = " << std::tanh(yc) << "\n";
        out.emit("crit yc");
        return 0;
      }
    }
    if (verify_cmd->parsed()) {
      auto g = src.load();
      auto Y = parse_couplings(g, ystr);
      auto o = make_kasteleyn(g);
      SparsePoly p = p_gamma(g);
      std::vector<CheckRow> rows;
      auto s = z_spin_series(g, 8);
      SparsePoly prod = s.poly.mul_truncated(p, 8).mul_truncated(p, 8);
      rows.push_back({"westbury", prod == SparsePoly::constant(p.nvars(), 1), "Z_spin * P^2 = 1 to degree 8"});
      if (z_f_generators(g) <= 24) rows.push_back({"grassmann_loop_sum", z_f(g, o) == p, "z_f = P"});
      rows.push_back({"dimer_pfaffian", dimer_p_gamma(g, o) == p, "Pf = P"});
      for (auto& r : bridge_checks(g, Y, true, 0)) rows.push_back(r);
      const int rc = emit_checks(out, rows);
      out.emit("verify-all");
      return rc;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool input = e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Topology ||
                       e.kind() == ErrorKind::UnsupportedGenerator || e.kind() == ErrorKind::SizeLimit;
    return input ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
