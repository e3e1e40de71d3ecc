#include "symred/errors.hpp"
#include "symred/report.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

using namespace symred;
using nlohmann::json;

TEST(Report, StateJsonRoundTrip) {
  const StateVector psi = catalog(CatalogName::HaarRandom, 5).canonical();
  const StateVector back = state_from_json(state_to_json(psi));
  EXPECT_EQ(back.amplitudes(), psi.amplitudes());
  EXPECT_THROW(state_from_json("not json"), InvalidInput);
  EXPECT_THROW(state_from_json("{\"amplitudes\": [[1, 0]]}"), InvalidInput);
  EXPECT_THROW(state_from_json("{\"amplitudes\": [[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"),
               InvalidInput);
}

TEST(Report, AnalyzeGhz) {
  const ReportOutput r = analyze_report(catalog(CatalogName::Ghz), {"catalog", "GHZ", std::nullopt},
                                        Polytope::three_qubit_default());
  EXPECT_EQ(r.exit_code, kExitPrecondition);
  const json j = json::parse(r.text);
  EXPECT_EQ(j["orbit_type"], "CONTINUOUS_STABILIZER(2)");
  EXPECT_EQ(j["chamber_position"], "WALL");
  EXPECT_EQ(j["reduction_error"]["kind"], "ON_WALL");
  EXPECT_TRUE(j["local_model"].is_null());
  for (const auto& block : j["moment"])
    for (const auto& row : block)
      for (const auto& z : row) EXPECT_LT(std::abs(z[0].get<double>()) + std::abs(z[1].get<double>()), 1e-15);
}

TEST(Report, AnalyzePrincipal) {
  const ReportOutput r = analyze_report(catalog(CatalogName::HaarRandom, 3), {"catalog", "HAAR_RANDOM", 3},
                                        Polytope::three_qubit_default());
  EXPECT_EQ(r.exit_code, kExitOk);
  const json j = json::parse(r.text);
  EXPECT_EQ(j["orbit_type"], "PRINCIPAL");
  const json& d = j["local_model"]["dimensions"];
  EXPECT_EQ(d["orbit"], 9);
  EXPECT_EQ(d["level_set"], 5);
  EXPECT_EQ(d["torus"], 3);
  EXPECT_EQ(d["normal"], 2);
  EXPECT_EQ(j["local_model"]["normal_space"]["a1"].size(), 64u);
  EXPECT_EQ(j["local_model"]["vprime"]["dim"], 58);
  EXPECT_TRUE(j.contains("tolerances"));
}

TEST(Report, AnalyzeProductState) {
  Vec8 v = Vec8::Zero();
  v(0) = 1.0;
  const ReportOutput r = analyze_report(StateVector(v), {"file", "sep.json", std::nullopt},
                                        Polytope::three_qubit_default());
  EXPECT_EQ(r.exit_code, kExitPrecondition);
  const json j = json::parse(r.text);
  EXPECT_EQ(j["reduction_error"]["kind"], "NOT_PRINCIPAL");
  EXPECT_EQ(j["polytope"]["position"], "BOUNDARY");
}

TEST(Report, FixedFlowSummary) {
  FlowPolicy p;
  p.fixed_generator = default_fixed_generator();
  p.duration = 0.1;
  const FlowOutput r = flow_report(catalog(CatalogName::HaarRandom, 2), {"catalog", "HAAR_RANDOM", 2}, p, 0);
  EXPECT_EQ(r.exit_code, kExitOk);
  const json j = json::parse(r.summary);
  EXPECT_LT(j["max_moment_drift"].get<double>(), 1e-12);
  EXPECT_LT(j["hamiltonian_drift"].get<double>(), 1e-12);
  EXPECT_EQ(r.csv.substr(0, r.csv.find('\n') + 1), trajectory_csv_header());
  EXPECT_EQ(std::count(r.csv.begin(), r.csv.end(), '\n'), 1 + 101);
}

TEST(Report, FlowPreconditionFailure) {
  FlowPolicy p;
  p.kind = PolicyKind::NormalDirection;
  p.duration = 0.01;
  const FlowOutput r = flow_report(catalog(CatalogName::Ghz), {"catalog", "GHZ", std::nullopt}, p, 0);
  EXPECT_EQ(r.exit_code, kExitPrecondition);
  EXPECT_EQ(json::parse(r.summary)["reduction_error"]["kind"], "ON_WALL");
}

TEST(Report, HalvingsAddConvergencePoints) {
  FlowPolicy p;
  p.kind = PolicyKind::NormalDirection;
  p.duration = 0.02;
  const StateSource src{"catalog", "HAAR_RANDOM", 11};
  const json one = json::parse(flow_report(catalog(CatalogName::HaarRandom, 11), src, p, 1).summary);
  const json two = json::parse(flow_report(catalog(CatalogName::HaarRandom, 11), src, p, 2).summary);
  EXPECT_EQ(one["convergence"].size(), 2u);
  EXPECT_EQ(two["convergence"].size(), 3u);
  EXPECT_DOUBLE_EQ(two["convergence"][2]["dt"].get<double>(), p.dt / 4);
}

TEST(Report, SampleIsDeterministic) {
  const Polytope poly = Polytope::three_qubit_default();
  const SampleOutput a = sample_report(7, 200, poly);
  const SampleOutput b = sample_report(7, 200, poly);
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_EQ(a.summary, b.summary);
  EXPECT_EQ(a.outside, 0);
  EXPECT_THROW(sample_report(7, 0, poly), InvalidInput);
}

TEST(Report, CompareSummaries) {
  EXPECT_FALSE(compare_summaries("{\"a\": 1.0, \"b\": \"x\"}", "{\"a\": 1.0000000000001, \"b\": \"x\"}"));
  EXPECT_TRUE(compare_summaries("{\"a\": 1.0}", "{\"a\": 1.001}"));
  EXPECT_TRUE(compare_summaries("{\"a\": 1.0}", "{\"a\": 1.0, \"c\": 2}"));
  EXPECT_TRUE(compare_summaries("{\"b\": \"x\"}", "{\"b\": \"y\"}"));
}
