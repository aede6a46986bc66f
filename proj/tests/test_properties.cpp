#include <gtest/gtest.h>

#include "invariants.hpp"

using namespace coarselab;
using namespace coarselab::invariants;

namespace {

void expect_ok(const Outcome& o) {
  EXPECT_TRUE(o.ok()) << o.name << ": " << o.failures << " of " << o.trials << " trials failed, first: "
                      << o.first_failure << ", worst margin " << o.worst;
}

class PerSpace : public ::testing::TestWithParam<std::size_t> {
 protected:
  static const std::vector<NamedSpace>& spaces() {
    static const auto all = test_spaces();
    return all;
  }
  const NamedSpace& space() const { return spaces()[GetParam()]; }
};

std::string space_name(const ::testing::TestParamInfo<std::size_t>& info) { return test_spaces()[info.param].name; }

}  // namespace

TEST_P(PerSpace, MetricAxioms) { expect_ok(metric_axioms(space())); }

TEST_P(PerSpace, SegmentsAreGeodesic) { expect_ok(segments_are_geodesic(space())); }

TEST_P(PerSpace, Horofunctions) {
  for (const auto& o : horofunction_properties(space())) expect_ok(o);
}

INSTANTIATE_TEST_SUITE_P(Spaces, PerSpace, ::testing::Range<std::size_t>(0, 6), space_name);

class PerMapFamily : public ::testing::TestWithParam<std::size_t> {};

TEST_P(PerMapFamily, PowerTables) {
  for (const auto& o : power_properties(power_cases()[GetParam()])) expect_ok(o);
}

INSTANTIATE_TEST_SUITE_P(Maps, PerMapFamily, ::testing::Range<std::size_t>(0, 4),
                         [](const auto& info) { return power_cases()[info.param].name; });

TEST(Outcome, RecordsWorstMargin) {
  Outcome o{"x"};
  o.record(1.0, 2.0);
  o.record(3.0, 2.5, "too big");
  EXPECT_EQ(o.trials, 2u);
  EXPECT_EQ(o.failures, 1u);
  EXPECT_EQ(o.worst, 0.5);
  EXPECT_EQ(o.first_failure, "too big");
  EXPECT_FALSE(o.ok());
  EXPECT_FALSE(Outcome{"empty"}.ok());
}
