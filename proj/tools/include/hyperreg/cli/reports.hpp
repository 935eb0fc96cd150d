#pragma once

#include "hyperreg/cli/io.hpp"
#include "hyperreg/construct.hpp"
#include "hyperreg/decomp.hpp"
#include "hyperreg/dims.hpp"
#include "hyperreg/quasirandom.hpp"
#include "hyperreg/refine.hpp"
#include "hyperreg/structure.hpp"

namespace hyperreg::io {

/// Rational as {"exact": "p/q", "value": double}.
json rational(const Rational& r);

json report(const Dev2Report& r);
json report(const Dev23Report& r);
json report(const DecompositionAudit& a);
json report(const HomogeneityReport& h);
json report(const Quotient& q);
json report(const Vc2Value& v);
json report(const Vc2Witness& w);
json report(const EmbeddingSearch& s);
json report(const CanonicalSearch& s);
json report(const CornerGraph& g);
json report(const ClusterResult& r);
json report(const TriadClassification& c);
json report(const BadPairs& b);
json report(const GroupedDecomposition& g);
json report(const CapExceeded& e);
json report(const PairPartitionReport& r);
json report(const MergeReport& m);
json report(const HyperValue& v);
json report(const BlowupEmbedding& e);
json triad_ref(const TriadRef& r);

}  // namespace hyperreg::io
