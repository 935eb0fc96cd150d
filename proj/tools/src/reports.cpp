#include "hyperreg/cli/reports.hpp"

namespace hyperreg::io {

json rational(const Rational& r) { return json{{"exact", to_string(r)}, {"value", to_double(r)}}; }

json report(const Dev2Report& r) {
  json j = envelope("dev2_report");
  j["u_size"] = r.u_size;
  j["v_size"] = r.v_size;
  j["edges"] = r.edges;
  j["density"] = rational(r.density);
  j["reference_density"] = r.reference_density ? rational(*r.reference_density) : json(nullptr);
  j["raw_sum"] = r.raw_sum;
  j["normalized_sum"] = r.normalized_sum;
  j["exact_normalized"] = r.exact_normalized ? rational(*r.exact_normalized) : json(nullptr);
  return j;
}

json report(const Dev23Report& r) {
  json j = envelope("dev23_report");
  j["d_xy"] = rational(r.d_xy);
  j["d_xz"] = rational(r.d_xz);
  j["d_yz"] = rational(r.d_yz);
  j["components"] = json::array({report(r.components[0]), report(r.components[1]), report(r.components[2])});
  j["triangles"] = r.triangles;
  j["in_relation"] = r.in_relation;
  j["relative_density"] = rational(r.relative_density);
  j["octahedral_sum"] = r.octahedral_sum;
  j["exact_octahedral"] = r.exact_octahedral ? rational(*r.exact_octahedral) : json(nullptr);
  j["normalized"] = r.normalized;
  j["exact_normalized"] = r.exact_normalized ? rational(*r.exact_normalized) : json(nullptr);
  j["degenerate"] = r.degenerate;
  return j;
}

json triad_ref(const TriadRef& r) {
  return json{{"i", r.i}, {"j", r.j}, {"k", r.k}, {"alpha", r.alpha}, {"beta", r.beta}, {"gamma", r.gamma}};
}

namespace {

json class_row(const ClassRow& c) {
  json j{{"i", c.i}, {"j", c.j}, {"alpha", c.alpha}, {"size", c.size}, {"passes", c.passes},
         {"passes_equitable", c.passes_equitable}};
  if (c.report) {
    j["density"] = rational(c.report->density);
    j["raw_sum"] = c.report->raw_sum;
    j["normalized_sum"] = c.report->normalized_sum;
  }
  return j;
}

json triad_row(const TriadRow& r) {
  json j = triad_ref(r.ref);
  j["triangles"] = r.triangles;
  j["in_relation"] = r.in_relation;
  j["density"] = rational(r.density);
  j["octahedral_sum"] = r.octahedral_sum;
  j["normalized"] = r.normalized;
  j["regular"] = r.regular;
  j["homogeneous"] = r.homogeneous;
  j["nontrivial"] = r.nontrivial;
  return j;
}

json refs(const std::vector<TriadRef>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(triad_ref(r));
  return a;
}

}  // namespace

json report(const DecompositionAudit& a) {
  json j = envelope("decomposition_audit");
  j["eps1"] = a.eps1;
  j["eps2"] = a.eps2;
  j["mu"] = a.mu;
  j["n"] = a.n;
  j["pairs_covered"] = a.pairs_covered;
  j["equitable_pairs_covered"] = a.equitable_pairs_covered;
  j["triples_covered"] = a.triples_covered;
  j["homogeneous_triples"] = a.homogeneous_triples;
  j["nontrivial_triples"] = a.nontrivial_triples;
  j["pair_coverage"] = a.pair_coverage;
  j["equitable_pair_coverage"] = a.equitable_pair_coverage;
  j["triple_coverage"] = a.triple_coverage;
  j["homogeneity_coverage"] = a.homogeneity_coverage;
  j["nontrivial_coverage"] = a.nontrivial_coverage;
  j["equipartition"] = a.equipartition;
  j["equitable"] = a.equitable;
  j["regular"] = a.regular;
  json classes = json::array();
  for (const auto& c : a.classes) classes.push_back(class_row(c));
  j["classes"] = classes;
  json triads = json::array();
  for (const auto& r : a.triads) triads.push_back(triad_row(r));
  j["triads"] = triads;
  return j;
}

json report(const HomogeneityReport& h) {
  json j = envelope("homogeneity_report");
  j["mu"] = h.mu;
  j["homogeneous_triples"] = h.homogeneous_triples;
  j["coverage"] = h.coverage;
  return j;
}

json report(const Quotient& q) {
  json j = envelope("quotient");
  j["row_class"] = q.row_class;
  j["col_class"] = q.col_class;
  j["row_classes"] = q.row_classes;
  j["col_classes"] = q.col_classes;
  j["graph"] = to_json(q.graph);
  return j;
}

json report(const Vc2Witness& w) { return json{{"k", w.k}, {"a", w.a}, {"b", w.b}, {"c", w.c}}; }

json report(const Vc2Value& v) {
  json j = envelope("vc2_report");
  j["value"] = v.value;
  j["exact"] = v.exact;
  j["witness"] = v.witness ? report(*v.witness) : json(nullptr);
  return j;
}

json report(const EmbeddingSearch& s) {
  json j = envelope("embedding_search");
  j["outcome"] = to_string(s.outcome);
  j["nodes"] = s.nodes;
  if (s.embedding)
    j["embedding"] = json{{"row_map", s.embedding->row_map}, {"col_map", s.embedding->col_map}};
  else
    j["embedding"] = nullptr;
  return j;
}

json report(const CanonicalSearch& s) {
  json j = envelope("canonical_search");
  j["exhaustive"] = s.exhaustive;
  if (s.hit) {
    j["kind"] = to_string(s.hit->kind);
    j["embedding"] = json{{"row_map", s.hit->embedding.row_map}, {"col_map", s.hit->embedding.col_map}};
  } else {
    j["kind"] = nullptr;
    j["embedding"] = nullptr;
  }
  return j;
}

json report(const CornerGraph& g) {
  json j = envelope("corner_graph");
  j["j"] = g.j;
  j["k"] = g.k;
  j["edge_vertices"] = g.edge_vertices;
  json corners = json::array();
  for (const auto& c : g.corner_vertices) corners.push_back(json{{"apex", c.apex}, {"beta", c.beta}, {"gamma", c.gamma}});
  j["corner_vertices"] = corners;
  j["colors"] = to_json(g.colors);
  j["density"] = g.density;
  return j;
}

json report(const ClusterResult& r) {
  json j = envelope("cluster_result");
  j["delta"] = r.delta;
  j["eps"] = r.eps;
  j["u0"] = r.u0;
  j["reps"] = r.reps;
  j["clusters"] = r.clusters;
  return j;
}

json report(const TriadClassification& c) {
  json j = envelope("triad_classification");
  j["eps1"] = c.eps1;
  j["eps2"] = c.eps2;
  j["hom"] = c.hom;
  j["mu"] = c.mu;
  j["f1"] = refs(c.f1);
  j["f0"] = refs(c.f0);
  j["f_err"] = refs(c.f_err);
  j["trivial"] = c.trivial;
  j["irregular"] = c.irregular;
  j["mid_band"] = c.mid_band;
  return j;
}

json report(const BadPairs& b) {
  json j = envelope("bad_pairs");
  j["threshold"] = b.threshold;
  json psi = json::array();
  for (auto [i, k] : b.psi) psi.push_back(json::array({i, k}));
  j["psi"] = psi;
  j["incidence"] = b.incidence;
  j["limit"] = b.limit;
  j["fraction"] = b.fraction;
  j["bound"] = b.bound;
  j["bound_holds"] = b.bound_holds;
  return j;
}

json report(const GroupedDecomposition& g) {
  json j = envelope("group_report");
  j["ell_in"] = g.ell_in;
  j["ell_out"] = g.ell_out;
  j["cap_achieved"] = g.cap_achieved;
  j["residual_used"] = g.residual_used;
  json cls = report(g.classification);
  j["classification"] = json{{"f1", cls["f1"].size()},
                             {"f0", cls["f0"].size()},
                             {"f_err", cls["f_err"].size()},
                             {"trivial", g.classification.trivial},
                             {"irregular", g.classification.irregular},
                             {"mid_band", g.classification.mid_band}};
  j["psi"] = report(g.psi);
  json pairs = json::array();
  for (const auto& p : g.pairs) {
    json pj{{"i", p.i}, {"j", p.j}, {"in_psi", p.in_psi}, {"rows", p.rows}, {"corners", p.corners},
            {"reps", p.reps}, {"exceptional", p.exceptional}, {"discarded", p.discarded}};
    json classes = json::array();
    for (const auto& m : p.classes)
      classes.push_back(json{{"color", m.color},
                             {"sources", m.sources},
                             {"residual", m.residual},
                             {"size", m.size},
                             {"measured", m.measured},
                             {"predicted", m.predicted},
                             {"prediction_holds", m.prediction_holds}});
    pj["classes"] = classes;
    pairs.push_back(pj);
  }
  j["pairs"] = pairs;
  json audit = report(g.audit);
  audit.erase("triads");
  audit.erase("classes");
  j["audit"] = audit;
  j["homogeneity"] = report(g.homogeneity);
  return j;
}

json report(const CapExceeded& e) {
  json j = envelope("cap_exceeded");
  j["message"] = e.what();
  j["cap"] = e.cap;
  json pairs = json::array();
  for (const auto& p : e.pairs) pairs.push_back(json{{"i", p.i}, {"j", p.j}, {"reps", p.reps}});
  j["pairs"] = pairs;
  return j;
}

json report(const PairPartitionReport& r) {
  json j = envelope("certification");
  j["a_size"] = r.a_size;
  j["b_size"] = r.b_size;
  j["ell"] = r.ell;
  j["target_dev"] = r.target_dev;
  j["seed"] = r.seed;
  j["attempts"] = r.attempts;
  j["certified"] = r.certified;
  j["worst_sum"] = r.worst_sum;
  j["worst_density_gap"] = r.worst_density_gap;
  json classes = json::array();
  for (const auto& c : r.classes)
    classes.push_back(json{{"color", c.color},
                           {"size", c.size},
                           {"density", c.density},
                           {"normalized_sum", c.normalized_sum},
                           {"passes", c.passes}});
  j["classes"] = classes;
  return j;
}

json report(const MergeReport& m) {
  json j = envelope("merge_report");
  j["u"] = m.u;
  j["u2"] = m.u2;
  j["v"] = m.v;
  j["merged_size"] = m.merged_size;
  j["triangles"] = m.triangles;
  j["in_relation"] = m.in_relation;
  j["density"] = rational(m.density);
  j["homogeneous"] = m.homogeneous;
  return j;
}

json report(const HyperValue& v) {
  json j = envelope("hyper_value");
  j["saturated"] = v.saturated;
  j["depth"] = v.depth;
  j["value"] = v.saturated ? json(nullptr) : json(v.value.str());
  return j;
}

json report(const BlowupEmbedding& e) { return json{{"a", e.a}, {"b", e.b}, {"c", e.c}}; }

}  // namespace hyperreg::io
