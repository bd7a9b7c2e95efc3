// uht: command-line front end. Human-readable text goes to stdout, the JSON
// run report to the -o path, timing to stderr.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "uht/cofrep.hpp"
#include "uht/hocolim.hpp"
#include "uht/homology.hpp"
#include "uht/io.hpp"
#include "uht/presheaf.hpp"
#include "uht/resolution.hpp"
#include "uht/site.hpp"

namespace fs = std::filesystem;
using namespace uht;
using uhtcli::Check;
using uhtcli::Evidence;
using uhtcli::RunReport;

namespace {

struct Loaded {
  Json doc;
  DocContext ctx;
};

Loaded load(RunReport& r, const fs::path& p) {
  r.add_input(p);
  return {read_json(p), DocContext{p.parent_path()}};
}

std::string rep_text(const FinCategory& c, const std::optional<std::vector<Representation>>& d) {
  if (!d) return "not a coproduct of representables";
  if (d->empty()) return "empty";
  std::vector<std::string> parts;
  for (const auto& x : *d) parts.push_back("r" + c.object(x.object));
  return join(parts, " + ");
}

Json rep_json(const FinCategory& c, const std::optional<std::vector<Representation>>& d) {
  if (!d) return nullptr;
  Json a = Json::array();
  for (const auto& x : *d) a.push_back(c.object(x.object));
  return a;
}

Json generator_counts(const SimplicialPresheaf& f) {
  Json j = Json::object();
  for (int x = 0; x < f.base->num_objects(); ++x) j[f.base->object(x)] = f.values[x].num_generators();
  return j;
}

// ---------------------------------------------------------------------------

void run_validate(RunReport& r, const fs::path& path, bool site_axioms) {
  auto [doc, ctx] = load(r, path);
  std::string kind = document_kind(doc);
  if (site_axioms && kind == "site") doc["validate_axioms"] = true;
  auto problems = validate_document(doc, ctx);
  Check c{"invariants", problems.empty()};
  c.details = {{"kind", kind}, {"problems", problems}};
  r.add(c);
  r.set_summary({{"kind", kind}});
  if (problems.empty()) std::cout << "valid " << kind << "\n";
  for (const auto& p : problems) std::cout << "problem: " << p << "\n";
}

void run_yoneda(RunReport& r, const fs::path& path) {
  auto [doc, ctx] = load(r, path);
  Presheaf f = presheaf_from_json(doc, ctx);
  const FinCategory& c = *f.base;

  ColimitVerdict cv = canonical_colim_verify(f);
  Check colim{"canonical_colimit", cv.pass};
  colim.details = {{"colimit_sections", cv.colimit_sections},
                   {"presheaf_sections", cv.presheaf_sections},
                   {"problems", cv.problems}};
  r.add(colim);
  std::cout << "colimit over elements: " << (cv.pass ? "isomorphic to F" : "MISMATCH") << " (" << cv.colimit_sections
            << " sections)\n";

  // hom(rX, F) -> F(X), alpha |-> alpha_X(id_X)
  Check lemma{"yoneda_lemma", true, Evidence::Exact};
  Json per = Json::object();
  for (int x = 0; x < c.num_objects(); ++x) {
    Presheaf rx = yoneda(f.base, x);
    const auto& idx = c.hom(x, x);
    int id_pos = static_cast<int>(std::find(idx.begin(), idx.end(), c.identity(x)) - idx.begin());
    std::vector<int> hit(f.size(x), 0);
    auto homs = presheaf_homs(rx, f);
    for (const auto& a : homs) ++hit[a.components[x][id_pos]];
    bool bij = std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
    lemma.pass = lemma.pass && bij;
    per[c.object(x)] = {{"homs", homs.size()}, {"sections", f.size(x)}, {"bijective", bij}};
  }
  lemma.details = per;
  r.add(lemma);
  std::cout << "hom(rX, F) = F(X): " << (lemma.pass ? "yes" : "NO") << " at every object\n";

  auto rep = representability_check(f);
  auto dec = representable_decomposition(f);
  Json summary{{"representable", rep ? Json(c.object(rep->object)) : Json(nullptr)},
               {"decomposition", rep_json(c, dec)}};
  r.set_summary(summary);
  std::cout << "representable: " << (rep ? "by " + c.object(rep->object) : std::string("no")) << "\n";
  std::cout << "decomposition: " << rep_text(c, dec) << "\n";
}

void run_cofrep(RunReport& r, const fs::path& path, const std::string& method, bool verify,
                std::optional<int> degree) {
  auto [doc, ctx] = load(r, path);
  SimplicialPresheaf input;
  SimplicialPresheaf out;
  SimplicialPresheafMap aug;
  std::optional<TruncationTag> trunc;
  if (method == "qtilde") {
    if (document_kind(doc) != "presheaf") throw InvalidInput("qtilde takes a presheaf of sets");
    Presheaf f = presheaf_from_json(doc, ctx);
    input = discrete_embed(f);
    QResult q = qtilde(f, degree);
    out = std::move(q.result);
    aug = std::move(q.augmentation);
    trunc = q.truncation;
  } else {
    input = simplicial_presheaf_from_json(doc, ctx);
    if (method == "diag") {
      QResult q = uht::q(input, degree);
      out = std::move(q.result);
      aug = std::move(q.augmentation);
      trunc = q.truncation;
    } else {
      int d = degree.value_or(std::max(input.dim(), 0) + 1);
      CanonicalQResult cq = canonical_q(input, d);
      out = std::move(cq.result);
      aug = std::move(cq.augmentation);
      trunc = cq.truncation;
      Check fin{"finality", cq.finality.pass, Evidence::Proxy, d, trunc};
      fin.details = {{"checked", cq.finality.checked}, {"failures", cq.finality.failures}};
      r.add(fin);
    }
  }
  const FinCategory& c = *out.base;
  std::cout << method << ": " << out.dim() << "-dimensional output";
  if (trunc) std::cout << ", truncated at " << trunc->bound << " (exact through " << trunc->exact_through << ")";
  std::cout << "\n";

  auto cert = cofibrancy_certificate(out);
  Check cc{"cofibrancy_certificate", cert.has_value(), Evidence::Structural, std::nullopt, trunc};
  Json split = Json::array();
  if (cert) {
    for (std::size_t k = 0; k < cert->splitting.nondegenerate.size(); ++k) {
      auto dec = representable_decomposition(cert->splitting.nondegenerate[k]);
      split.push_back({{"level", k}, {"nondegenerate", rep_json(c, dec)}});
      std::cout << "  N" << k << " = " << rep_text(c, dec) << "\n";
    }
  } else {
    std::cout << "  no free degeneracy splitting found\n";
  }
  cc.details = {{"sufficient_only", true}, {"splitting", split}};
  r.add(cc);

  if (verify) {
    std::optional<int> bound;
    if (trunc) bound = trunc->exact_through;
    ObjectwiseVerdict ov = objectwise_verdict(out, input, aug, bound);
    Check v{"augmentation_weak_equivalence", ov.pass, Evidence::Proxy, bound, trunc};
    v.details = uhtcli::objectwise_json(ov);
    r.add(v);
    std::cout << "augmentation: " << (ov.pass ? "PASS" : "FAIL") << " (homology proxy)\n";
  }
  r.set_summary({{"method", method},
                 {"output_generators", generator_counts(out)},
                 {"output_dimension", out.dim()},
                 {"truncation", uhtcli::truncation_json(trunc)}});
}

void run_hocolim(RunReport& r, const fs::path& path, std::optional<int> degree) {
  auto [doc, ctx] = load(r, path);
  SPDiagram d = diagram_from_json(doc, ctx);
  Replacement rep = simplicial_replacement(d, degree);
  BKResult bk = bk_hocolim(d);
  const FinCategory& base = *d.base;
  int bound = std::max(bk.result.dim(), 0) + 1;
  if (rep.truncation) bound = std::min(bound, rep.truncation->exact_through);
  Check agree{"bk_agrees_with_replacement", true, Evidence::Proxy, bound, rep.truncation};
  Json per = Json::object();
  for (int x = 0; x < base.num_objects(); ++x) {
    HomologySummary hr = homology(rep.result.values[x], bound);
    HomologySummary hb = homology(bk.result.values[x], bound);
    bool same = hr.agrees_through(hb, bound);
    agree.pass = agree.pass && same;
    per[base.object(x)] = {{"replacement", uhtcli::homology_json(hr)}, {"bousfield_kan", uhtcli::homology_json(hb)},
                           {"agree", same}};
    std::string label = base.num_objects() == 1 ? std::string("hocolim") : "hocolim at " + base.object(x);
    std::cout << label << ": " << hb.to_string() << "\n";
  }
  agree.details = {{"objects", per}, {"bk_replaced_values", bk.replaced}};
  r.add(agree);
  r.set_summary({{"homology", per}});
}

void run_homology(RunReport& r, const fs::path& path, std::optional<int> degree) {
  auto [doc, ctx] = load(r, path);
  Json per = Json::object();
  if (document_kind(doc) == "simplicial_set") {
    SimplicialSetFin k = simpset_from_json(doc, ctx);
    HomologySummary h = homology(k, degree);
    per["*"] = uhtcli::homology_json(h);
    std::cout << h.to_string() << "\n";
  } else {
    SimplicialPresheaf f = simplicial_presheaf_from_json(doc, ctx);
    for (int x = 0; x < f.base->num_objects(); ++x) {
      HomologySummary h = homology(f.values[x], degree);
      per[f.base->object(x)] = uhtcli::homology_json(h);
      std::cout << f.base->object(x) << ": " << h.to_string() << "\n";
    }
  }
  r.set_summary({{"homology", per}, {"degree_bound", degree ? Json(*degree) : Json(nullptr)}});
}

struct SiteArgs {
  fs::path site;
  int levels = 3;
};

SiteData load_site(RunReport& r, const fs::path& p) {
  auto [doc, ctx] = load(r, p);
  return site_from_json(doc, ctx);
}

Json family_json(const FinCategory& c, const CoveringFamily& f) {
  Json m = Json::array();
  for (int u : f.members) m.push_back(c.morphism(u));
  return Json{{"members", m}, {"synthesized", f.synthesized}};
}

Json levels_json(const AugmentedObject& u, int levels, bool print) {
  const FinCategory& c = *u.u.base;
  Json out = Json::array();
  for (int k = 0; k <= levels; ++k) {
    auto dec = representable_decomposition(level_presheaf(u.u, k));
    out.push_back({{"level", k}, {"representables", rep_json(c, dec)}});
    if (print) std::cout << "  level " << k << ": " << rep_text(c, dec) << "\n";
  }
  return out;
}

void run_cech(RunReport& r, const SiteArgs& a, const std::string& object, std::optional<int> family) {
  SiteData s = load_site(r, a.site);
  const FinCategory& c = *s.base;
  int x = c.object_index(object);
  int fi = family.value_or(0);
  if (fi < 0 || fi >= static_cast<int>(s.covers[x].size()))
    throw InvalidInput(object + " has " + std::to_string(s.covers[x].size()) + " covering families");
  const CoveringFamily& fam = s.covers[x][fi];
  AugmentedObject u = cech_nerve(s, x, fam.members, a.levels);
  std::cout << "Čech nerve of " << family_json(c, fam)["members"].dump() << " over " << object << "\n";
  Json lv = levels_json(u, a.levels, true);
  auto problems = check_simplicial_presheaf_map(u.u, discrete_embed(yoneda(s.base, x)), u.augmentation);
  Check aug{"augmentation_natural", problems.empty(), Evidence::Structural, a.levels, u.truncation};
  aug.details = {{"problems", problems}};
  r.add(aug);
  r.set_summary({{"object", object},
                 {"family", family_json(c, fam)},
                 {"levels", lv},
                 {"truncation", uhtcli::truncation_json(u.truncation)}});
}

Json hypercover_json(const FinCategory& c, const HypercoverReport& h) {
  Json matching = Json::array();
  for (std::size_t n = 0; n < h.matching.size(); ++n)
    matching.push_back({{"degree", n + 1},
                        {"cover", h.matching[n].pass},
                        {"isomorphism", n < h.matching_iso.size() ? Json(bool(h.matching_iso[n])) : Json(nullptr)},
                        {"witness_object", h.matching[n].witness_object},
                        {"witness_section", h.matching[n].witness_section}});
  Json repr = Json::array();
  for (bool b : h.representable_levels) repr.push_back(b);
  (void)c;
  return Json{{"pass", h.pass},
              {"bound", h.bound},
              {"representable_levels", repr},
              {"first_bad_level", h.first_bad_level ? Json(*h.first_bad_level) : Json(nullptr)},
              {"degree0_cover", h.degree0.pass},
              {"degree0_witness", {{"object", h.degree0.witness_object}, {"section", h.degree0.witness_section}}},
              {"matching", matching}};
}

void run_hypercheck(RunReport& r, const SiteArgs& a, const std::optional<fs::path>& augmented) {
  if (augmented) {
    auto [doc, ctx] = load(r, *augmented);
    AugmentedInput in = augmented_from_json(doc, ctx);
    HypercoverReport h = is_hypercover(in.object, in.site, a.levels);
    Check c{"hypercover", h.pass, Evidence::Structural, a.levels, in.object.truncation};
    c.details = hypercover_json(*in.site.base, h);
    r.add(c);
    std::cout << "hypercover over " << in.site.base->object(in.object.object) << ": " << (h.pass ? "PASS" : "FAIL");
    if (h.first_bad_level) std::cout << " (level " << *h.first_bad_level << " is not a coproduct of representables)";
    std::cout << "\n";
    return;
  }
  SiteData s = load_site(r, a.site);
  const FinCategory& c = *s.base;
  for (int x = 0; x < c.num_objects(); ++x)
    for (std::size_t fi = 0; fi < s.covers[x].size(); ++fi) {
      AugmentedObject u = cech_nerve(s, x, s.covers[x][fi].members, a.levels);
      HypercoverReport h = is_hypercover(u, s, a.levels);
      Check ch{"cech_" + c.object(x) + "_" + std::to_string(fi), h.pass, Evidence::Structural, a.levels, u.truncation};
      ch.details = hypercover_json(c, h);
      ch.details["family"] = family_json(c, s.covers[x][fi]);
      r.add(ch);
      bool all_iso = std::all_of(h.matching_iso.begin(), h.matching_iso.end(), [](bool b) { return b; });
      std::cout << c.object(x) << " family " << fi << ": " << (h.pass ? "PASS" : "FAIL")
                << (all_iso ? ", matching maps are isomorphisms" : "") << "\n";
    }
}

std::string file_stem(const std::string& s) {
  std::string out;
  for (char ch : s) out += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  return out;
}

void run_relations(RunReport& r, const SiteArgs& a, const fs::path& dir) {
  SiteData s = load_site(r, a.site);
  const FinCategory& c = *s.base;
  auto rels = relations(s, a.levels);
  fs::create_directories(dir);
  Json listing = Json::array();
  for (const auto& rel : rels) {
    std::string name = "relation_" + file_stem(c.object(rel.object)) + "_" + std::to_string(rel.family) + ".json";
    const CoveringFamily& fam = s.covers[rel.object][rel.family];
    Json j{{"kind", "relation"},
           {"object", c.object(rel.object)},
           {"family", family_json(c, fam)},
           {"truncation", uhtcli::truncation_json(rel.cech.truncation)},
           {"source", simplicial_presheaf_to_json(rel.cech.u)},
           {"target", simplicial_presheaf_to_json(rel.target)},
           {"map", simplicial_presheaf_map_to_json(rel.cech.u, rel.target, rel.cech.augmentation)},
           {"objectwise", uhtcli::objectwise_json(rel.objectwise)},
           {"realized_at_point", uhtcli::verdict_json(rel.realized)}};
    uhtcli::write_json(dir / name, j);
    auto problems = check_simplicial_presheaf_map(rel.cech.u, rel.target, rel.cech.augmentation);
    Check ch{"relation_" + c.object(rel.object) + "_" + std::to_string(rel.family), problems.empty(),
             Evidence::Structural, a.levels, rel.cech.truncation};
    ch.details = {{"file", name}, {"problems", problems}};
    r.add(ch);
    listing.push_back({{"file", name},
                       {"object", c.object(rel.object)},
                       {"family", family_json(c, fam)},
                       {"objectwise_equivalence", rel.objectwise.pass},
                       {"realized_equivalence", rel.realized.pass},
                       {"realized_source_homology", rel.realized.source.to_string()}});
    std::cout << name << ": hocolim at the point " << rel.realized.source.to_string() << ", objectwise "
              << (rel.objectwise.pass ? "equivalence" : "not an equivalence") << "\n";
  }
  r.set_summary({{"relations", listing}});
  std::cout << rels.size() << " relation" << (rels.size() == 1 ? "" : "s") << "\n";
}

void run_adjoint(RunReport& r, const fs::path& fpath, const fs::path& wpath, std::optional<int> degree) {
  auto [fdoc, fctx] = load(r, fpath);
  auto [wdoc, wctx] = load(r, wpath);
  SimplicialPresheaf f = simplicial_presheaf_from_json(fdoc, fctx);
  // a plain simplicial set is taken as the constant presheaf on F's category
  SimplicialPresheaf w = document_kind(wdoc) == "simplicial_set"
                             ? constant_simplicial(f.base, simpset_from_json(wdoc, wctx))
                             : simplicial_presheaf_from_json(wdoc, wctx);
  if (category_to_json(*f.base) != category_to_json(*w.base))
    throw InvalidInput("F and W live on different categories");
  w.base = f.base;
  int m = degree.value_or(std::max(f.dim(), 0));
  ResolutionData g = standard_resolution_data(f.base, m);
  AdjunctionVerdict v = adjunction_check(g, f, w);
  Check ch{"adjunction", v.pass, Evidence::Exact, m, TruncationTag::at(m + 1)};
  ch.details = {{"maps_re_f_to_w", v.lhs_count},
                {"maps_f_to_sing_w", v.rhs_count},
                {"bijection", v.bijection},
                {"natural_in_w", v.natural_in_w},
                {"natural_in_f", v.natural_in_f}};
  r.add(ch);
  std::cout << "hom(Re F, W) = " << v.lhs_count << ", hom(F, Sing W) = " << v.rhs_count << ": "
            << (v.pass ? "PASS" : "FAIL") << "\n";
}

void run_thomason(RunReport& r, const fs::path& path) {
  auto [doc, ctx] = load(r, path);
  ThomasonInput in = thomason_from_json(doc, ctx);
  ThomasonVerdict v = thomason_compare(in.theta, in.gr, in.e);
  Check ch{"thomason", v.pass, Evidence::Proxy, v.max_degree};
  Json per = Json::object();
  for (std::size_t i = 0; i < v.objects.size(); ++i) {
    per[v.objects[i]] = {{"grothendieck", uhtcli::homology_json(v.grothendieck_side[i])},
                         {"iterated", uhtcli::homology_json(v.iterated_side[i])}};
    std::cout << "Gr side " << v.grothendieck_side[i].to_string() << ", iterated side "
              << v.iterated_side[i].to_string() << "\n";
  }
  ch.details = per;
  r.add(ch);
}

std::vector<std::string> echo(int argc, char** argv) {
  // the output location is left out so reports written to different places compare equal
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "-o" || a == "--output") {
      ++i;
      continue;
    }
    if (a.rfind("--output=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  auto start = std::chrono::steady_clock::now();
  CLI::App app{"Finite homotopy theory of simplicial presheaves"};
  app.require_subcommand(1);

  std::string output;
  std::string path;
  std::string method = "qtilde";
  bool verify = false, site_axioms = false;
  std::optional<int> degree;
  std::optional<int> family;
  std::string object, target, augmented;
  SiteArgs site;

  auto with_output = [&](CLI::App* s) { s->add_option("-o,--output", output, "write the JSON report here"); };

  auto* validate = app.add_subcommand("validate", "decode a document and check its invariants");
  validate->add_option("path", path)->required()->check(CLI::ExistingFile);
  validate->add_flag("--site-axioms", site_axioms, "also check site axioms");
  with_output(validate);

  auto* yon = app.add_subcommand("yoneda", "colimit-of-representables and Yoneda checks for a presheaf");
  yon->add_option("path", path)->required()->check(CLI::ExistingFile);
  with_output(yon);

  auto* cof = app.add_subcommand("cofrep", "cofibrant replacement");
  cof->add_option("path", path)->required()->check(CLI::ExistingFile);
  cof->add_option("--method", method)->check(CLI::IsMember({"qtilde", "diag", "canonical"}));
  cof->add_flag("--verify", verify, "check the augmentation objectwise");
  cof->add_option("--degree", degree, "truncation bound");
  with_output(cof);

  auto* hoc = app.add_subcommand("hocolim", "homotopy colimit of a diagram");
  hoc->add_option("--diagram", path)->required()->check(CLI::ExistingFile);
  hoc->add_option("--degree", degree, "truncation bound for non-chain-finite indices");
  with_output(hoc);

  auto* hom = app.add_subcommand("homology", "integral homology of a simplicial set or simplicial presheaf");
  hom->add_option("path", path)->required()->check(CLI::ExistingFile);
  hom->add_option("--degree", degree);
  with_output(hom);

  auto* cech = app.add_subcommand("cech", "Čech nerve of a covering family");
  cech->add_option("--site", site.site)->required()->check(CLI::ExistingFile);
  cech->add_option("--object", object)->required();
  cech->add_option("--family", family, "index among the families of the object");
  cech->add_option("--levels", site.levels)->check(CLI::NonNegativeNumber);
  with_output(cech);

  auto* hyper = app.add_subcommand("hypercheck", "hypercover conditions for every Čech nerve of a site");
  hyper->add_option("--site", site.site)->check(CLI::ExistingFile);
  hyper->add_option("--augmented", augmented, "check this augmented object instead")->check(CLI::ExistingFile);
  hyper->add_option("--levels", site.levels)->check(CLI::NonNegativeNumber);
  with_output(hyper);

  auto* rel = app.add_subcommand("relations", "relation maps of the covering families");
  rel->add_option("--site", site.site)->required()->check(CLI::ExistingFile);
  rel->add_option("--levels", site.levels)->check(CLI::NonNegativeNumber);
  rel->add_option("-o,--output", output, "directory for relation files and manifest.json")->required();

  auto* adj = app.add_subcommand("adjoint-check", "hom(Re F, W) against hom(F, Sing W)");
  adj->add_option("--presheaf", path)->required()->check(CLI::ExistingFile);
  adj->add_option("--target", target)->required()->check(CLI::ExistingFile);
  adj->add_option("--degree", degree, "resolution bound (default: dim F)");
  with_output(adj);

  auto* tho = app.add_subcommand("thomason", "hocolim over Gr Θ against the iterated hocolim");
  tho->add_option("path", path)->required()->check(CLI::ExistingFile);
  with_output(tho);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunReport report(echo(argc, argv));
  CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub == validate) run_validate(report, path, site_axioms);
    else if (sub == yon) run_yoneda(report, path);
    else if (sub == cof) run_cofrep(report, path, method, verify, degree);
    else if (sub == hoc) run_hocolim(report, path, degree);
    else if (sub == hom) run_homology(report, path, degree);
    else if (sub == cech) run_cech(report, site, object, family);
    else if (sub == hyper) {
      if (augmented.empty() && site.site.empty()) throw InvalidInput("hypercheck needs --site or --augmented");
      run_hypercheck(report, site, augmented.empty() ? std::nullopt : std::optional<fs::path>(augmented));
    } else if (sub == rel) run_relations(report, site, output);
    else if (sub == adj) run_adjoint(report, path, target, degree);
    else if (sub == tho) run_thomason(report, path);
  } catch (const InvariantViolation& e) {
    report.set_error("invariant_violation", e.what(), 1);
    std::cout << "invariant violation:\n";
    for (const auto& p : e.problems()) std::cout << "  " << p << "\n";
  } catch (const InvalidInput& e) {
    report.set_error("invalid_input", e.what(), 2);
    std::cerr << "invalid input: " << e.what() << "\n";
  } catch (const NotChainFinite& e) {
    report.set_error("not_chain_finite", e.what(), 1);
    std::cerr << "not chain finite: " << e.what() << " (pass --degree to truncate)\n";
  } catch (const SizeBoundExceeded& e) {
    report.set_error("size_bound_exceeded", e.what(), 1);
    std::cerr << "size bound exceeded: " << e.what() << " (raise UHT_MAX_HOM_ENUM)\n";
  } catch (const TruncationTooSmall& e) {
    report.set_error("truncation_too_small", e.what(), 1);
    std::cerr << "truncation too small: " << e.what() << "\n";
  } catch (const Error& e) {
    report.set_error("error", e.what(), e.exit_code());
    std::cerr << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    report.set_error("invalid_input", e.what(), 2);
    std::cerr << "invalid input: " << e.what() << "\n";
  }

  int code = report.exit_code();
  try {
    if (sub == rel) {
      uhtcli::write_json(fs::path(output) / "manifest.json", report.to_json());
    } else if (!output.empty()) {
      uhtcli::write_json(output, report.to_json());
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    code = 2;
  }
  std::cout << (code == 0 ? "PASS" : code == 1 ? "FAIL" : "INVALID") << "\n";
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "duration: " << ms << " ms\n";
  return code;
}
