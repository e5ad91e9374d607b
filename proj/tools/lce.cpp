#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lce/assemble.hpp"
#include "lce/dashed_trees.hpp"
#include "lce/errors.hpp"
#include "lce/graph_enum.hpp"
#include "lce/numeric_eval.hpp"
#include "lce/partitions.hpp"
#include "lce/single_site.hpp"
#include "lce/vertex_weights.hpp"

using namespace lce;
using nlohmann::json;

namespace {

enum class Format { Text, Json, Latex };

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "latex") return Format::Latex;
  throw Error(ErrorKind::InvalidArgument, "unknown format '" + s + "'");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (...) {
      throw Error(ErrorKind::ParseError, "expected an integer, got '" + item + "'");
    }
  }
  return out;
}

json graph_json(const Multigraph& g) {
  json bundles = json::array();
  for (const auto& b : g.bundles()) bundles.push_back({b.u, b.v, b.mult});
  return {{"code", to_text(g)}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"bundles", bundles}};
}

void print_poly(const SitePoly& p, Format f) {
  switch (f) {
    case Format::Text:
      std::cout << p.to_text() << "\n";
      break;
    case Format::Latex:
      std::cout << p.to_latex() << "\n";
      break;
    case Format::Json: {
      json terms = json::array();
      for (auto& [m, c] : p.terms()) terms.push_back({{"monomial", m.to_text()}, {"coefficient", to_string(c)}});
      std::cout << json{{"terms", terms}}.dump(2) << "\n";
      break;
    }
  }
}

void print_expression(const Expression& e, Format f, const std::string& name) {
  switch (f) {
    case Format::Text:
      std::cout << name << " =\n" << to_text(e);
      break;
    case Format::Latex:
      std::cout << name << " = " << to_latex(e) << "\n";
      break;
    case Format::Json:
      std::cout << to_json(e).dump(2) << "\n";
      break;
  }
}

// ---------------------------------------------------------------- enumerate

struct EnumerateOpts {
  int edges = 0;
  std::string cls = "connected";
  int rooted = 0;
  bool count_only = false;
  std::string format = "text";
  int cap = kDefaultOrderCap;
};

int run_enumerate(const EnumerateOpts& o) {
  const Format f = parse_format(o.format);
  json out = json::array();
  std::size_t count = 0;
  if (o.rooted > 0) {
    auto rs = enumerate_rooted(o.edges, o.rooted, o.cap);
    if (o.cls == "1li")
      rs.erase(std::remove_if(rs.begin(), rs.end(), [](const RootedMultigraph& r) { return !is_1li(r.base); }),
               rs.end());
    count = rs.size();
    if (!o.count_only)
      for (const auto& r : rs) {
        json roots = json::array();
        for (auto [v, m] : r.roots) roots.push_back(v);
        json j = graph_json(r.base);
        j["roots"] = roots;
        j["aut"] = rooted_aut_order(r).get_str();
        out.push_back(j);
      }
  } else {
    std::vector<Multigraph> gs;
    if (o.cls == "connected")
      gs = enumerate_connected(o.edges, o.cap);
    else if (o.cls == "1li")
      gs = enumerate_1li(o.edges, o.cap);
    else
      throw Error(ErrorKind::InvalidArgument, "class must be connected or 1li");
    count = gs.size();
    if (!o.count_only)
      for (const auto& g : gs) {
        json j = graph_json(g);
        j["aut"] = aut_order(g).get_str();
        j["articulation_vertices"] = block_decomposition(g).articulation_vertices.size();
        out.push_back(j);
      }
  }
  if (f == Format::Json) {
    json doc{{"edges", o.edges}, {"class", o.cls}, {"count", count}};
    if (!o.count_only) doc["graphs"] = out;
    std::cout << doc.dump(2) << "\n";
  } else {
    if (!o.count_only)
      for (const auto& j : out) {
        std::cout << j["code"].get<std::string>() << "  |Aut| = " << j["aut"].get<std::string>();
        if (j.contains("roots")) std::cout << "  roots = " << j["roots"].dump();
        std::cout << "\n";
      }
    std::cout << "count: " << count << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- partitions

int run_partitions(const std::string& text, int cells) {
  std::vector<std::string> names;
  Multiset b = parse_multiset(text, names);
  json parts = json::array();
  for (const auto& p : multiset_partitions(b, cells)) {
    json cl = json::array();
    for (const auto& c : p.cells) cl.push_back(to_text(c, names));
    parts.push_back({{"cells", cl}, {"fix_order", fix_order(p).get_str()}});
  }
  json doc{{"multiset", to_text(b, names)},
           {"cells", cells},
           {"perm_order", perm_order(b).get_str()},
           {"count", parts.size()},
           {"partitions", parts}};
  std::cout << doc.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- trees

int run_trees(int n, const std::string& label_text, const std::string& format) {
  const Format f = parse_format(format);
  json out = json::array();
  if (label_text.empty()) {
    for (const auto& t : enumerate_dashed(n)) {
      json edges = json::array();
      for (auto [a, b] : t.edges) edges.push_back({a, b});
      out.push_back({{"text", to_text(t)},
                     {"open", t.n_open},
                     {"dashed", t.n_dashed},
                     {"edges", edges},
                     {"aut", tree_aut_order(t).get_str()},
                     {"sign", sign(t)}});
    }
  } else {
    std::vector<std::string> names;
    Multiset b = parse_multiset(label_text, names);
    const Integer perm = perm_order(b);
    for (const auto& t : label_trees(b, n)) {
      std::vector<std::string> labels;
      for (int v = 0; v < t.base.n_open; ++v) labels.push_back(to_text(t.partition.cells[t.cell_of_open[v]], names));
      Rational ratio(perm, labeled_sym(t));
      ratio.canonicalize();
      out.push_back({{"text", to_text(t.base, labels)},
                     {"aut", t.aut.get_str()},
                     {"sym", labeled_sym(t).get_str()},
                     {"perm_over_sym", to_string(ratio)},
                     {"sign", sign(t.base)}});
    }
  }
  if (f == Format::Json) {
    std::cout << json{{"n", n}, {"count", out.size()}, {"trees", out}}.dump(2) << "\n";
  } else {
    for (const auto& j : out) {
      std::cout << j["text"].get<std::string>() << "  |Aut| = " << j["aut"].get<std::string>();
      if (j.contains("sym")) std::cout << "  Sym = " << j["sym"].get<std::string>();
      std::cout << "  sign = " << j["sign"].get<int>() << "\n";
    }
    std::cout << "count: " << out.size() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- weight

int run_weight(const std::string& degrees, const std::string& labels, bool distinct, const std::string& method,
               const std::string& format) {
  const Format f = parse_format(format);
  auto d = parse_int_list(degrees);
  BlockProfile bp;
  std::vector<std::pair<int, int>> elems;
  std::vector<std::string> lab;
  if (!labels.empty()) {
    std::stringstream ss(labels);
    std::string item;
    while (std::getline(ss, item, ',')) lab.push_back(item);
    if (lab.size() != d.size()) throw Error(ErrorKind::ShapeMismatch, "one label per degree is required");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::string key = distinct ? std::to_string(i) : (lab.empty() ? "d" + std::to_string(d[i]) : lab[i]);
    auto it = std::find(bp.names.begin(), bp.names.end(), key);
    int l = static_cast<int>(it - bp.names.begin());
    if (it == bp.names.end()) {
      bp.names.push_back(key);
      bp.degree[l] = d[i];
    } else if (bp.degree[l] != d[i]) {
      throw Error(ErrorKind::InvalidArgument, "equivalent blocks must have equal degrees");
    }
    elems.emplace_back(l, 1);
  }
  bp.blocks = Multiset(elems);
  if (method == "partition") {
    print_poly(mu_gamma_blocks(bp), f);
  } else if (method == "integer") {
    print_poly(mu_gamma_degrees(d), f);
  } else if (method == "both") {
    auto a = mu_gamma_blocks(bp);
    auto b = mu_gamma_degrees(d);
    print_poly(a, f);
    if (!(a == b)) {
      std::cerr << "mismatch: integer-labelled trees give " << b.to_text() << "\n";
      return 1;
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "method must be partition, integer or both");
  }
  return 0;
}

// ---------------------------------------------------------------- gamma, w

int run_gamma(int order, const std::string& oracle, const std::string& format, int cap) {
  const Format f = parse_format(format);
  Expression g = gamma_expansion(order, cap);
  print_expression(g, f, "Gamma_" + std::to_string(order));
  if (oracle == "mixed") {
    if (order >= 2 && !(to_pure_omega(gamma_mixed_recursion(order)) == to_pure_omega(g))) {
      std::cerr << "oracle mismatch: mixed recursion differs at order " << order << "\n";
      return 1;
    }
    std::cerr << "mixed recursion agrees\n";
  } else if (oracle == "full") {
    if (order >= 2 && !(to_pure_omega(gamma_full_recursion(order)) == to_pure_omega(g))) {
      std::cerr << "oracle mismatch: full recursion differs at order " << order << "\n";
      return 1;
    }
    std::cerr << "full recursion agrees\n";
  } else if (oracle != "none") {
    throw Error(ErrorKind::InvalidArgument, "oracle must be mixed, full or none");
  }
  return 0;
}

int run_w(int order, const std::string& oracle, const std::string& format, int cap) {
  const Format f = parse_format(format);
  Expression w = w_expansion(order, cap);
  print_expression(w, f, "W_" + std::to_string(order));
  if (oracle == "recursion") {
    if (!(w_recursion(order) == w)) {
      std::cerr << "oracle mismatch: W recursion differs at order " << order << "\n";
      return 1;
    }
    std::cerr << "W recursion agrees\n";
  } else if (oracle != "none") {
    throw Error(ErrorKind::InvalidArgument, "oracle must be recursion or none");
  }
  return 0;
}

// ---------------------------------------------------------------- zerodim

int run_zerodim(int order, const std::string& check, const std::string& format) {
  const Format f = parse_format(format);
  if (order > kTreeRuleCap)
    throw Error(ErrorKind::OrderCapExceeded, "order above " + std::to_string(kTreeRuleCap));
  SitePoly g = gamma_inverse_series(order);
  print_poly(g, f);
  if (check == "three-way") {
    bool ok = gamma_tree_rule(order) == g && gamma_recursion(order) == g;
    std::cerr << (ok ? "tree rule, recursion and inverse series agree\n" : "three-way check FAILED\n");
    return ok ? 0 : 1;
  }
  if (check != "none") throw Error(ErrorKind::InvalidArgument, "check must be three-way or none");
  return 0;
}

// ---------------------------------------------------------------- site

SingleSiteModel make_model(const std::string& name, double lambda) { return parse_model(name, lambda); }

int run_site(const std::string& model, double lambda, double h, int jet, const std::string& format) {
  const Format f = parse_format(format);
  auto m = make_model(model, lambda);
  auto oj = omega_jet(m, h, jet);
  auto gj = legendre_dual(oj);
  if (f == Format::Json) {
    json doc{{"model", m.name()}, {"h", h}, {"phi", gj.argument}, {"omega", oj.values}, {"gamma", gj.values}};
    if (m.kind == ModelKind::Quartic) doc["lambda"] = lambda;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "model " << m.name() << ", h = " << h << ", phi = omega_1 = " << gj.argument << "\n";
    std::cout.precision(15);
    for (int k = 1; k <= jet; ++k)
      std::cout << "omega_" << k << " = " << oj[k] << "    gamma_" << k << " = " << gj[k] << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- verify flow

int run_verify_flow(int order, int sites, const std::string& model, double lambda, std::uint64_t seed, double tol,
                    const std::string& format) {
  const Format f = parse_format(format);
  auto m = make_model(model, lambda);
  LatticeModel lat{random_hopping(sites, seed), m};
  auto phi = random_field(m, sites, seed);
  FlowVerifier fv(order);
  bool ok = true;
  json rows = json::array();
  for (int l = 2; l <= order; ++l) {
    auto r = fv.check(l, lat, phi);
    ok = ok && r.residual < tol;
    rows.push_back({{"order", l}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual}});
    if (f != Format::Json)
      std::printf("l=%d  l*Gamma_l=% .15e  trace=% .15e  residual=%.3e %s\n", l, r.lhs, r.rhs, r.residual,
                  r.residual < tol ? "ok" : "FAIL");
  }
  if (f == Format::Json)
    std::cout << json{{"model", m.name()}, {"sites", sites}, {"seed", seed}, {"tol", tol}, {"ok", ok}, {"rows", rows}}
                     .dump(2)
              << "\n";
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- eval

int run_eval(const std::string& expr_path, const std::string& lattice_path, const std::string& field_path,
             const std::string& model, double lambda) {
  Expression e = expression_from_json(load_json(expr_path));
  json lj = load_json(lattice_path);
  auto m = make_model(lj.is_object() && lj.contains("model") ? lj["model"].get<std::string>() : model,
                      lj.is_object() && lj.contains("lambda") ? lj["lambda"].get<double>() : lambda);
  LatticeModel lat{matrix_from_json(lj), m};
  FieldConfig phi = vector_from_json(load_json(field_path));
  Tensor t = eval_expression(e, lat, phi);
  json doc{{"rank", t.rank}, {"sites", t.sites}};
  if (t.rank == 0)
    doc["value"] = t.scalar();
  else
    doc["data"] = t.data;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- chi2

int run_chi2(const std::string& model, double lambda, int dim, int order, int box) {
  auto rows = susceptibility_demo(make_model(model, lambda), dim, order, box);
  std::printf("%5s  %22s  %22s\n", "order", "series", "reference");
  for (const auto& r : rows) {
    if (r.has_reference)
      std::printf("%5d  % .15e  % .15e\n", r.order, r.series, r.reference);
    else
      std::printf("%5d  % .15e  %22s\n", r.order, r.series, "-");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linked cluster expansion: graphs, vertex weights and series for W and Gamma"};
  app.require_subcommand(1);
  std::function<int()> action;

  EnumerateOpts eo;
  auto* en = app.add_subcommand("enumerate", "Enumerate connected or 1LI multigraphs with a given number of edges");
  en->add_option("--edges", eo.edges, "Number of edges")->required();
  en->add_option("--class", eo.cls, "connected or 1li")->check(CLI::IsMember({"connected", "1li"}));
  en->add_option("--rooted", eo.rooted, "Number of distinct roots");
  en->add_flag("--count-only", eo.count_only, "Print only the count");
  en->add_option("--format", eo.format, "text or json");
  en->add_option("--cap", eo.cap, "Order cap");
  en->callback([&] { action = [&] { return run_enumerate(eo); }; });

  std::string ms;
  int cells = 1;
  auto* pa = app.add_subcommand("partitions", "List partitions of a multiset into a number of cells");
  pa->add_option("--multiset", ms, "e.g. \"b^2,b'\"")->required();
  pa->add_option("--cells", cells, "Number of cells")->required();
  pa->callback([&] { action = [&] { return run_partitions(ms, cells); }; });

  int tn = 1;
  std::string tl, tf = "text";
  auto* tr = app.add_subcommand("trees", "Dashed trees with n open circles, optionally labelled by a multiset");
  tr->add_option("--n", tn, "Number of open circles")->required();
  tr->add_option("--label-multiset", tl, "Label multiset, e.g. \"b^2,b'\"");
  tr->add_option("--format", tf, "text or json");
  tr->callback([&] { action = [&] { return run_trees(tn, tl, tf); }; });

  std::string wd, wl, wm = "both", wf = "text";
  bool wdist = false;
  auto* we = app.add_subcommand("weight", "Articulation-vertex weight for given block degrees");
  we->add_option("--degrees", wd, "Comma-separated block degrees")->required();
  we->add_option("--labels", wl, "Comma-separated block classes (default: equal degree means equal class)");
  we->add_flag("--blocks-distinct", wdist, "Treat all blocks as inequivalent");
  we->add_option("--method", wm, "partition, integer or both");
  we->add_option("--format", wf, "text, json or latex");
  we->callback([&] { action = [&] { return run_weight(wd, wl, wdist, wm, wf); }; });

  int go = 2, gcap = kSymbolicOrderCap;
  std::string gor = "none", gf = "text";
  auto* ga = app.add_subcommand("gamma", "Graph expansion of Gamma_l");
  ga->add_option("--order", go, "Order l")->required();
  ga->add_option("--oracle", gor, "mixed, full or none");
  ga->add_option("--format", gf, "text, json or latex");
  ga->add_option("--cap", gcap, "Order cap");
  ga->callback([&] { action = [&] { return run_gamma(go, gor, gf, gcap); }; });

  int wo = 1, wcap = kSymbolicOrderCap;
  std::string wor = "none", wfmt = "text";
  auto* wc = app.add_subcommand("w", "Graph expansion of W_l");
  wc->add_option("--order", wo, "Order l")->required();
  wc->add_option("--oracle", wor, "recursion or none");
  wc->add_option("--format", wfmt, "text, json or latex");
  wc->add_option("--cap", wcap, "Order cap");
  wc->callback([&] { action = [&] { return run_w(wo, wor, wfmt, wcap); }; });

  int zo = 4;
  std::string zc = "none", zf = "text";
  auto* zd = app.add_subcommand("zerodim", "Single-site gamma_l in terms of omega");
  zd->add_option("--order", zo, "Order l")->required();
  zd->add_option("--check", zc, "three-way or none");
  zd->add_option("--format", zf, "text, json or latex");
  zd->callback([&] { action = [&] { return run_zerodim(zo, zc, zf); }; });

  std::string sm = "quartic", sf = "text";
  double sl = 0.1, sh = 0.0;
  int sj = 6;
  auto* si = app.add_subcommand("site", "Numeric omega and gamma jets of a single-site model");
  si->add_option("--model", sm, "gaussian, quartic or ising");
  si->add_option("--lambda", sl, "Quartic coupling");
  si->set_help_flag("--help", "Print this help message and exit");
  si->add_option("--h", sh, "Source");
  si->add_option("--jet", sj, "Jet order");
  si->add_option("--format", sf, "text or json");
  si->callback([&] { action = [&] { return run_site(sm, sl, sh, sj, sf); }; });

  int vo = 4, vn = 4;
  std::string vm = "quartic", vf = "text";
  double vl = 0.1, vt = 1e-8;
  std::uint64_t vs = 1;
  auto* ve = app.add_subcommand("verify", "Numerical checks");
  ve->require_subcommand(1);
  auto* fl = ve->add_subcommand("flow", "Check the flow recursion for Gamma_l on a random lattice");
  fl->add_option("--order", vo, "Maximal order")->required();
  fl->add_option("--sites", vn, "Number of sites");
  fl->add_option("--model", vm, "gaussian, quartic or ising");
  fl->add_option("--lambda", vl, "Quartic coupling");
  fl->add_option("--seed", vs, "Random seed");
  fl->add_option("--tol", vt, "Residual tolerance");
  fl->add_option("--format", vf, "text or json");
  fl->callback([&] { action = [&] { return run_verify_flow(vo, vn, vm, vl, vs, vt, vf); }; });

  std::string ex, la, fi, em = "quartic";
  double el = 0.1;
  auto* ev = app.add_subcommand("eval", "Evaluate an expression on a lattice at a mean field");
  ev->add_option("--expr", ex, "Expression JSON file")->required();
  ev->add_option("--lattice", la, "Hopping matrix JSON file")->required();
  ev->add_option("--field", fi, "Mean field JSON file")->required();
  ev->add_option("--model", em, "Site model when the lattice file does not name one");
  ev->add_option("--lambda", el, "Quartic coupling");
  ev->callback([&] { action = [&] { return run_eval(ex, la, fi, em, el); }; });

  std::string cm = "ising";
  double cl = 0.1;
  int cd = 1, cmax = 4, cb = 6;
  auto* ch = app.add_subcommand("chi2", "Hopping series of the 2-point susceptibility on a periodic lattice");
  ch->add_option("--model", cm, "gaussian, quartic or ising");
  ch->add_option("--lambda", cl, "Quartic coupling");
  ch->add_option("--dim", cd, "Lattice dimension");
  ch->add_option("--order", cmax, "Maximal order");
  ch->add_option("--box", cb, "Box size");
  ch->callback([&] { action = [&] { return run_chi2(cm, cl, cd, cmax, cb); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return action ? action() : 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
