#include "locfin/report.hpp"

#include <algorithm>

#include "locfin/coalg.hpp"
#include "locfin/ext.hpp"
#include "locfin/frontier.hpp"
#include "locfin/gallery.hpp"
#include "locfin/io.hpp"
#include "locfin/lift.hpp"
#include "locfin/order.hpp"

namespace locfin {

namespace {

using json = nlohmann::json;

std::string status(const Verdict& v) { return std::string(to_string(v.status)); }

ClaimCheck row(std::string name, std::string statement, std::string expected, std::string computed, json detail = {}) {
  return {std::move(name), std::move(statement), std::move(expected), std::move(computed),
          detail.is_null() ? json::object() : std::move(detail)};
}

}  // namespace

std::vector<ClaimCheck> gallery_claims() {
  std::vector<ClaimCheck> out;

  {
    const auto s = gallery_instantiate("zneg", "-6..-1");
    const PreorderAnalysis a(s);
    const FrontierSearch f = find_standard_frontier(a, *s->cat().find("-001"));
    out.push_back(row("zneg-frontier", "the object -1 of zneg has no frontier; minimal sizes grow with the window",
                      "Refuted", status(f.verdict), f.verdict.witness));
    const auto [upper, lower] = check_upper_lower_finite(a);
    out.push_back(row("zneg-upper-finite", "zneg is upper finite", "Certified", status(upper)));
    out.push_back(row("zneg-lower-finite", "zneg is not lower finite", "Refuted", status(lower)));
  }
  {
    const auto s = gallery_instantiate("zchain", "-4..4");
    const LeftStrictReport r = check_left_strict(PreorderAnalysis(s));
    out.push_back(row("zchain-left-strict", "every object of zchain has the frontier {n-1}", "Certified", status(r.verdict)));
  }
  {
    const Module n = gallery_module_on("zchain/N", "-4..4");
    out.push_back(row("zchain-N-comodule", "the constant module N on zchain is not a comodule", "NotLiftable",
                      std::string(to_string(lift_to_comodule(n).decision))));
    out.push_back(row("zchain-N-contramodule", "the constant module N on zchain is not a contramodule", "NotLiftable",
                      std::string(to_string(lift_to_contramodule(n).decision))));
  }
  for (long l : {0L, 1L, 2L, 3L}) {
    const Module n = gallery_module_on("zchain/N_l:" + std::to_string(l), "-5..5");
    const Verdict v = is_contrafinite(n, SupportPolicy::Declared);
    out.push_back(row("zchain-N_l:" + std::to_string(l), "N_l is contrafinite with A_{l} = [-l..l]", "Certified",
                      status(v), v.witness.value("A", json::object()).value(CategoryGenerator::format_id(l), json::array())));
  }
  {
    const Module n = gallery_module_on("zneg/const", "-6..-1");
    out.push_back(row("zneg-const-contramodule",
                      "on zneg infinite support does not obstruct a contramodule lift", "Liftable",
                      std::string(to_string(lift_to_contramodule(n).decision))));
    out.push_back(row("zneg-const-comodule", "the constant left module on zneg is a comodule", "Liftable",
                      std::string(to_string(lift_to_comodule(n).decision))));
  }
  {
    const ShortExactSeq s = zneg_comodule_image_counterexample(-6);
    const Verdict v = closure_test(ClosureKind::ComoduleImageRight, s);
    out.push_back(row("zneg-comodule-image-extension",
                      "right comodule images on zneg are not closed under extensions", "Refuted", status(v), v.witness));
  }
  for (long n = 1; n <= 5; ++n) {
    const auto s = gallery_instantiate("chainA", std::to_string(n));
    const GradedCoalgebra g = build_coalgebra(s);
    const auto idx = conilpotency_index(long_quotient(g));
    const PreorderAnalysis a(s);
    out.push_back(row("chainA-" + std::to_string(n) + "-conilpotency",
                      "the long part of the coalgebra of A_n is killed by the iterate of the length of its longest chain",
                      std::to_string(std::max<Index>(1, a.longest_chain())), idx ? std::to_string(*idx) : "unbounded"));
  }
  {
    const auto s = gallery_instantiate("discrete", "-2..2");
    const auto [upper, lower] = check_upper_lower_finite(PreorderAnalysis(s));
    out.push_back(row("discrete-finite", "the discrete category is upper and lower finite", "Certified/Certified",
                      status(upper) + "/" + status(lower)));
  }
  {
    const auto s = gallery_instantiate("matrix2", "0..1");
    const auto idx = conilpotency_index(long_quotient(build_coalgebra(s)));
    out.push_back(row("matrix2-long-part", "two isomorphic objects leave no long part", "1",
                      idx ? std::to_string(*idx) : "unbounded"));
  }
  return out;
}

json claims_report() {
  json rows = json::array();
  bool all_ok = true;
  for (const auto& c : gallery_claims()) {
    all_ok = all_ok && c.ok();
    rows.push_back({{"name", c.name},
                    {"statement", c.statement},
                    {"expected", c.expected},
                    {"computed", c.computed},
                    {"ok", c.ok()},
                    {"detail", c.detail}});
  }
  return {{"schema_version", kSchemaVersion}, {"claims", rows}, {"all_ok", all_ok}};
}

}  // namespace locfin
