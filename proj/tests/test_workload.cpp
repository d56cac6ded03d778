#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "fog2c/errors.hpp"
#include "fog2c/workload.hpp"

using namespace fog2c;

namespace {

RequestDistribution base() {
  RequestDistribution d;
  d.size = Distribution::lognormal(8e6, 0.5);
  d.intensity = Distribution::uniform(10, 30);
  d.deadline = Distribution::constant(0.5);
  d.sources = {{"d1", 1.0, std::nullopt}, {"d2", 3.0, std::string("ap2")}};
  return d;
}

}  // namespace

TEST_CASE("sampling is a pure function of the seed") {
  const auto a = sample_requests(base(), 500, 11);
  const auto b = sample_requests(base(), 500, 11);
  const auto c = sample_requests(base(), 500, 12);
  REQUIRE(a.size() == 500);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == i);
    CHECK(a[i].size == b[i].size);
    CHECK(a[i].source == b[i].source);
    differs |= a[i].size != c[i].size;
  }
  CHECK(differs);
}

TEST_CASE("sampled values respect their distributions") {
  const auto reqs = sample_requests(base(), 20000, 1);
  std::vector<double> sizes;
  std::map<std::string, int> by_source;
  double intensity = 0;
  for (const auto& r : reqs) {
    REQUIRE(r.size > 0);
    REQUIRE(r.intensity >= 10);
    REQUIRE(r.intensity <= 30);
    CHECK(r.deadline == 0.5);
    CHECK(r.gen_time == 0.0);
    CHECK(r.n_ops() == doctest::Approx(r.size * r.intensity));
    sizes.push_back(r.size);
    intensity += r.intensity;
    ++by_source[r.source];
    if (r.source == "d2") CHECK(r.assigned_ap == std::optional<std::string>("ap2"));
    else CHECK_FALSE(r.assigned_ap.has_value());
  }
  std::nth_element(sizes.begin(), sizes.begin() + 10000, sizes.end());
  CHECK(sizes[10000] == doctest::Approx(8e6).epsilon(0.03));
  CHECK(intensity / 20000 == doctest::Approx(20).epsilon(0.01));
  CHECK(by_source["d2"] / 20000.0 == doctest::Approx(0.75).epsilon(0.03));
}

TEST_CASE("distribution means and checks") {
  CHECK(Distribution::constant(3).mean() == 3);
  CHECK(Distribution::uniform(2, 4).mean() == 3);
  CHECK(Distribution::lognormal(1, 0).mean() == doctest::Approx(1));
  CHECK(Distribution::constant(0).check().size() == 1);
  CHECK(Distribution::uniform(3, 2).check().size() == 1);
  CHECK(Distribution::lognormal(1, -1).check().size() == 1);
  CHECK(Distribution::uniform(2, 2).check().empty());
  Rng rng(1);
  CHECK(Distribution::uniform(2, 2).sample(rng) == 2);
}

TEST_CASE("invalid distributions are rejected with every issue") {
  RequestDistribution d = base();
  d.size = Distribution::constant(-1);
  d.sources.clear();
  try {
    sample_requests(d, 1, 0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.issues().size() == 2);
  }
  d = base();
  d.sources = {{"d1", 0.0, std::nullopt}};
  CHECK_THROWS_AS(sample_requests(d, 1, 0), ConfigError);
}

TEST_CASE("periodic stream spacing and count") {
  Request proto;
  proto.size = 1e4;
  const auto s = periodic_stream(900, proto, 1.0);
  CHECK(s.size() == 900);
  CHECK(s[1].gen_time == doctest::Approx(1.0 / 900));
  CHECK(s.back().id == 899);
  CHECK(periodic_stream(0.9e3, proto, 2.0).size() == 1800);
  CHECK(periodic_stream(3, proto, 1.1).size() == 4);
  CHECK(periodic_stream(0.1, proto, 1.0).size() == 1);
  CHECK_THROWS_AS(periodic_stream(0, proto, 1.0), DomainError);
}
