#include "cubesep/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubesep/construction.hpp"
#include "cubesep/development.hpp"
#include "cubesep/errors.hpp"
#include "cubesep/io.hpp"
#include "cubesep/separability.hpp"

namespace cubesep {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (const auto& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

json edges_json(const LabeledComplex& z) {
  json a = json::array();
  for (const auto& e : z.edges())
    a.push_back(json::array({z.graph().name(e.gen), e.src, e.dst}));
  return a;
}

json complex_json(const LabeledComplex& z) {
  return json{{"vertices", z.size()},
              {"base", z.base()},
              {"edges", edges_json(z)}};
}

json certificate_json(const SeparationCertificate& cert) {
  json sub = json::array();
  for (const auto& h : cert.subgroup_gens)
    sub.push_back(word_name(cert.cover.complex().graph(), h.letters()));
  return json{{"index", cert.index},
              {"bound", cert.bound},
              {"verified", cert.verify()},
              {"subgroup_generators", sub},
              {"cover", complex_json(cert.cover.complex())}};
}

struct CommonArgs {
  std::string complex_file;
  std::string graph_file;
  std::vector<std::string> letters;
};

LabeledComplex load_checked(const CommonArgs& a) {
  LabeledComplex z = load_complex(a.complex_file);
  if (!a.graph_file.empty()) {
    DefiningGraph g = load_graph(a.graph_file);
    if (!(g == z.graph()))
      throw InputError("the -g graph differs from the complex's graph");
  }
  return z;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"separability toolkit for right-angled Artin groups"};
  app.require_subcommand(1);

  auto emit = [&out](json j) {
    j["schema"] = 1;
    out << j.dump(2) << "\n";
  };

  CommonArgs na;
  auto* c_norm = app.add_subcommand("normalize", "shortlex normal form");
  c_norm->add_option("-g,--graph", na.graph_file, "defining graph file")
      ->required();
  c_norm->add_option("letters", na.letters, "word letters (a, a^-1, ...)");
  c_norm->callback([&] {
    DefiningGraph g = load_graph(na.graph_file);
    NormalForm nf = normalize(g, parse_word(g, join(na.letters)));
    emit(json{{"word", join(na.letters)},
              {"normal_form", word_name(g, nf.letters())},
              {"length", nf.length()}});
  });

  CommonArgs ma;
  auto* c_mem = app.add_subcommand("member", "subgroup membership");
  c_mem->add_option("-z,--complex", ma.complex_file, "complex file")
      ->required();
  c_mem->add_option("-g,--graph", ma.graph_file, "cross-check graph file");
  c_mem->add_option("letters", ma.letters, "word letters");
  c_mem->callback([&] {
    LabeledComplex z = load_checked(ma);
    NormalForm nf = normalize(z.graph(), parse_word(z.graph(), join(ma.letters)));
    emit(json{{"normal_form", word_name(z.graph(), nf.letters())},
              {"member", member(z, nf)}});
  });

  CommonArgs sa;
  bool use_stallings = false;
  auto* c_sep = app.add_subcommand("separate", "build a separating cover");
  c_sep->add_option("-z,--complex", sa.complex_file, "complex file")
      ->required();
  c_sep->add_option("-g,--graph", sa.graph_file, "cross-check graph file");
  c_sep->add_flag("--stallings", use_stallings,
                  "free-product fast path (edgeless graphs)");
  c_sep->add_option("letters", sa.letters, "word letters");
  c_sep->callback([&] {
    LabeledComplex z = load_checked(sa);
    NormalForm nf = normalize(z.graph(), parse_word(z.graph(), join(sa.letters)));
    if (member(z, nf))
      throw InputError("the element lies in the subgroup");
    SeparationCertificate cert =
        use_stallings ? stallings_separate(z, nf) : separate(z, nf);
    json j = certificate_json(cert);
    j["normal_form"] = word_name(z.graph(), nf.letters());
    emit(std::move(j));
  });

  CommonArgs ta;
  auto* c_thm = app.add_subcommand("theorem-a",
                                   "extend the complex to kill one element");
  c_thm->add_option("-z,--complex", ta.complex_file, "complex file")
      ->required();
  c_thm->add_option("-g,--graph", ta.graph_file, "cross-check graph file");
  c_thm->add_option("letters", ta.letters, "word letters");
  c_thm->callback([&] {
    LabeledComplex z = load_checked(ta);
    NormalForm nf = normalize(z.graph(), parse_word(z.graph(), join(ta.letters)));
    SeparatingComplexBuilder b(z, nf);
    LabeledComplex y = b.run();
    VerificationReport rep = verify_theorem_a(z, nf, y);
    json ver{{"passed", rep.passed()},
             {"subcomplex", rep.subcomplex_ok},
             {"local_isometry", rep.local_isometry_ok},
             {"trace", rep.trace_ok},
             {"bound", rep.bound_ok}};
    json stats{{"folds", b.stats.folds},
               {"transports", b.stats.saturation.transports},
               {"cycle_closures", b.stats.saturation.cycle_closures},
               {"chain_length", b.chain.size()},
               {"chain_fallback", b.stats.chain_fallback},
               {"chain_attempts", b.stats.chain_attempts}};
    json j = complex_json(y);
    j["normal_form"] = word_name(z.graph(), nf.letters());
    j["vertex_bound"] = z.size() * (nf.length() + 1);
    j["verification"] = std::move(ver);
    j["stats"] = std::move(stats);
    emit(std::move(j));
    if (!rep.passed())
      throw InvariantError("verification failed on the result");
  });

  CommonArgs ca;
  auto* c_comp = app.add_subcommand("complete", "canonical completion");
  c_comp->add_option("-z,--complex", ca.complex_file, "complex file")
      ->required();
  c_comp->add_option("-g,--graph", ca.graph_file, "cross-check graph file");
  c_comp->callback([&] {
    LabeledComplex z = load_checked(ca);
    CoverComplex c = canonical_completion(z);
    json j = complex_json(c.complex());
    j["degree"] = c.degree();
    emit(std::move(j));
  });

  CommonArgs ha;
  std::vector<std::string> hull_points;
  auto* c_hull = app.add_subcommand("hull", "convex hull of group elements");
  c_hull->add_option("-g,--graph", ha.graph_file, "defining graph file")
      ->required();
  c_hull->add_option("-p,--point", hull_points,
                     "hull point, one quoted word per flag")
      ->allow_extra_args(false)
      ->required();
  c_hull->callback([&] {
    DefiningGraph g = load_graph(ha.graph_file);
    std::vector<NormalForm> pts;
    for (const auto& p : hull_points)
      pts.push_back(normalize(g, parse_word(g, p)));
    DevelopedComplex d = DevelopedComplex::hull(g, std::move(pts));
    json verts = json::array();
    for (int i = 0; i < d.size(); ++i)
      verts.push_back(word_name(g, d.vertex(i).letters()));
    json edges = json::array();
    for (const auto& e : d.edges())
      edges.push_back(json::array({e.src, g.name(e.gen), e.dst}));
    emit(json{{"vertices", verts}, {"edges", edges}});
  });

  CommonArgs oa;
  std::vector<std::string> subgroup_words;
  int m_max = 8;
  long budget = 2'000'000;
  auto* c_orc = app.add_subcommand("oracle", "exact minimum separating index");
  c_orc->add_option("-g,--graph", oa.graph_file, "defining graph file")
      ->required();
  c_orc->add_option("-s,--subgroup", subgroup_words,
                    "subgroup generator, one quoted word per flag")
      ->allow_extra_args(false);
  c_orc->add_option("-m,--max-index", m_max, "largest index to try");
  c_orc->add_option("--budget", budget, "search node budget");
  c_orc->add_option("letters", oa.letters, "target word letters");
  c_orc->callback([&] {
    DefiningGraph g = load_graph(oa.graph_file);
    std::vector<NormalForm> sub;
    for (const auto& s : subgroup_words)
      sub.push_back(normalize(g, parse_word(g, s)));
    NormalForm nf = normalize(g, parse_word(g, join(oa.letters)));
    OracleResult r = min_sep_index_oracle(g, sub, nf, m_max, budget);
    json j{{"normal_form", word_name(g, nf.letters())},
           {"max_index", m_max},
           {"nodes", r.nodes},
           {"budget_hit", r.budget_hit}};
    j["index"] = r.index ? json(*r.index) : json(nullptr);
    emit(std::move(j));
    if (r.budget_hit) throw BudgetExceeded("oracle budget exhausted");
  });

  CommonArgs gra;
  int growth_n = 3;
  int growth_m = 8;
  long growth_budget = 2'000'000;
  auto* c_gro = app.add_subcommand("sep-growth",
                                   "max oracle index over a ball");
  c_gro->add_option("-z,--complex", gra.complex_file, "complex file")
      ->required();
  c_gro->add_option("-g,--graph", gra.graph_file, "cross-check graph file");
  c_gro->add_option("-n,--radius", growth_n, "ball radius")->required();
  c_gro->add_option("-m,--max-index", growth_m, "largest index to try");
  c_gro->add_option("--budget", growth_budget, "per-element node budget");
  c_gro->callback([&] {
    LabeledComplex z = load_checked(gra);
    GrowthReport r = sep_growth(z, growth_n, growth_m, growth_budget);
    json j{{"n", r.n},
           {"max_index", r.max_index},
           {"tested", r.tested},
           {"unresolved", r.unresolved}};
    j["witness"] = r.witness
                       ? json(word_name(z.graph(), r.witness->letters()))
                       : json(nullptr);
    emit(std::move(j));
    if (r.unresolved > 0) throw BudgetExceeded("oracle budget exhausted");
  });

  CommonArgs cka;
  auto* c_chk = app.add_subcommand("check", "local isometry check");
  c_chk->add_option("-z,--complex", cka.complex_file, "complex file")
      ->required();
  c_chk->add_option("-g,--graph", cka.graph_file, "cross-check graph file");
  c_chk->callback([&] {
    LabeledComplex z = load_checked(cka);
    LocalIsometryReport rep = check_local_isometry(z);
    json v = json::array();
    for (const auto& viol : rep.violations)
      v.push_back(json{{"vertex", viol.vertex},
                       {"a", letter_name(z.graph(), viol.a)},
                       {"b", letter_name(z.graph(), viol.b)}});
    emit(json{{"passed", rep.passed()},
              {"connected", z.connected()},
              {"violations", v}});
  });

  CommonArgs tra;
  auto* c_tra = app.add_subcommand("transversal",
                                   "coset words of a separating cover");
  c_tra->add_option("-z,--complex", tra.complex_file, "complex file")
      ->required();
  c_tra->add_option("-g,--graph", tra.graph_file, "cross-check graph file");
  c_tra->add_option("letters", tra.letters, "word letters");
  c_tra->callback([&] {
    LabeledComplex z = load_checked(tra);
    NormalForm nf =
        normalize(z.graph(), parse_word(z.graph(), join(tra.letters)));
    SeparationCertificate cert = separate(z, nf);
    std::vector<NormalForm> words = short_transversal(cert.cover, cert.base);
    json w = json::array();
    for (const auto& t : words)
      w.push_back(word_name(z.graph(), t.letters()));
    emit(json{{"index", cert.index}, {"words", w}});
  });

  std::vector<std::string> argv{"cubesep"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> ptrs;
  for (const auto& a : argv) ptrs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    err << "invariant error: " << e.what() << "\n";
    return 2;
  } catch (const ConstructionIncomplete& e) {
    err << "construction incomplete: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

}  // namespace cubesep
