#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>

#include "entropy_banach/checks.hpp"
#include "entropy_banach/errors.hpp"
#include "entropy_banach/json_io.hpp"

#include "support.hpp"

using namespace eb;

TEST_CASE("rationals round trip as strings") {
  for (const Q x : {Q(0), frac(-3, 7), frac(123456789, 1024)}) CHECK(q_from_json(to_json(x)) == x);
  CHECK(q_from_json(Json(3)) == 3);
  CHECK(q_from_json(Json(0.375)) == frac(3, 8));
  CHECK_THROWS_AS(q_from_json(Json("abc")), ParseError);
  CHECK_THROWS_AS(q_from_json(Json::array()), ParseError);
}

TEST_CASE("maps, certificates and bounds round trip") {
  PLMap f({Q(0), frac(1, 3), Q(1)}, {frac(1, 2), Q(-2), frac(5, 7)});
  CHECK(plmap_from_json(parse_json_text(to_json(f).dump())) == f);

  HorseshoeCertificate c{3, 2, {{Q(0), frac(1, 3)}, {frac(1, 3), frac(2, 3)}, {frac(2, 3), Q(1)}}};
  HorseshoeCertificate c2 = certificate_from_json(to_json(c));
  CHECK(c2.d == 3);
  CHECK(c2.k == 2);
  CHECK(c2.intervals == c.intervals);

  EntropyBounds b;
  b.lower = 0.5;
  b.upper = std::numeric_limits<double>::infinity();
  b.lower_witness = c;
  b.lower_source = "horseshoe";
  Json j = to_json(b);
  CHECK(j["upper"].is_null());
  EntropyBounds b2 = bounds_from_json(j);
  CHECK(std::isinf(b2.upper));
  CHECK(b2.lower == 0.5);
  CHECK(b2.lower_witness.has_value());
}

TEST_CASE("families and witnesses round trip") {
  FunctionFamily fs{{PLMap({Q(0), Q(1)}, {Q(0), Q(1)}), PLMap({Q(0), Q(1)}, {Q(1), Q(0)})}, "pair"};
  FunctionFamily fs2 = family_from_json(to_json(fs));
  CHECK(fs2.label == "pair");
  CHECK(fs2.members == fs.members);

  WitnessReport w = ell1_witness(std::nullopt, 2, gamma_schedule(2, Q(2)));
  WitnessReport w2 = witness_from_json(parse_json_text(to_json(w).dump()));
  CHECK(w2.f == w.f);
  CHECK(w2.x0 == w.x0);
  CHECK(w2.steps.size() == w.steps.size());
  CHECK(verify_witness(w2).empty());
}

TEST_CASE("bad input is reported with its position") {
  try {
    parse_json_text("{\n  \"a\": [1, 2,,]\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(plmap_from_json(Json{{"breakpoints", {"1", "0"}}, {"values", {"0", "1"}}}), ParseError);
  CHECK_THROWS_AS(plmap_from_json(Json{{"values", {"0"}}}), ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/x.json"), IoError);
}

TEST_CASE("polyline csv has a header and one line per node") {
  std::string csv = polyline_csv(PLMap({Q(0), frac(1, 2), Q(1)}, {Q(0), Q(1), Q(0)}), "tent");
  CHECK(csv == "# tent\n0,0\n0.5,1\n1,0\n");
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.subcommand = "psi";
  m.parameters = {{"N", "8"}, {"ratio", "2/3"}};
  m.outputs = {"a.json", "b.csv"};
  m.wall_time = 1.25;
  RunManifest m2 = manifest_from_json(parse_json_text(to_json(m).dump()));
  CHECK(m2.subcommand == m.subcommand);
  CHECK(m2.parameters == m.parameters);
  CHECK(m2.outputs == m.outputs);
  CHECK(m2.wall_time == m.wall_time);
  CHECK(m2.library_version == EB_VERSION);

  std::string path = "manifest_roundtrip_test.json";
  write_text_file(path, to_json(m).dump(2));
  CHECK(manifest_from_json(read_json_file(path)).subcommand == "psi");
  std::remove(path.c_str());
}
