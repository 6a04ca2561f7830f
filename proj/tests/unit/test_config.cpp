#include <cmath>
#include <string>

#include "core/config.hpp"
#include "core/flow.hpp"
#include "doctest.h"

using namespace minkflow;

namespace {

const char* kMinimal = R"(# disk scenario
[domain]
kind = disk
radius = 1.0

[alpha]
kind = constant
value = 0.5

[initial]
kind = zero

[grid]
n_r = 48
n_theta = 96

[solver]
t_end = 20
)";

ConfigError parse_failure(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected ConfigError");
  return ConfigError(ErrorCode::InvalidArgument, "", 0, "");
}

}  // namespace

TEST_CASE("minimal configuration") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.domain.kind == DomainKind::Disk);
  CHECK(c.domain.radius == 1.0);
  CHECK(c.alpha.source == AlphaSource::Constant);
  CHECK(c.alpha.value == 0.5);
  CHECK(c.initial.kind == InitialKind::Zero);
  CHECK(c.n_r == 48);
  CHECK(c.n_theta == 96);
  CHECK(c.solver.t_end == 20.0);
  CHECK(c.solver.sigma == 0.5);
  CHECK(c.solver.trans_tol == 1e-4);
  CHECK(c.solver.trans_window == 1.0);
  CHECK(c.checks);
  CHECK(c.check_tol == 0.05);
  CHECK(c.source_text == kMinimal);
}

TEST_CASE("full configuration") {
  const RunConfig c = parse_config(R"(
[domain]
kind = radial-fourier
mean_radius = 1.5
cos = 0.1 0 0.02
sin = 0 0.03
center = 0.5 -0.25
n_samples = 2048
[alpha]
kind = fourier
value = 0.2
cos = 0.1
sin = 0 0.05
[initial]
kind = fourier
seed = 42
max_slope = 0.5
modes = 3
[grid]
n_r = 16
n_theta = 32
[solver]
sigma = 0.25
eps_space = 1e-8
t_end = 2
trans_tol = 1e-5
trans_window = 0.5
snapshot_every = 0.5
monitor_every = 0.05
[output]
dir = out/dir
[checks]
enabled = false
tolerance = 0.1
)");
  CHECK(c.domain.kind == DomainKind::RadialFourier);
  CHECK(c.domain.cos_coeffs.size() == 3);
  CHECK(c.domain.sin_coeffs[1] == 0.03);
  CHECK(c.domain.center.x == 0.5);
  CHECK(c.domain.center.y == -0.25);
  CHECK(c.n_samples == 2048);
  CHECK(c.alpha.source == AlphaSource::Fourier);
  CHECK(c.alpha.sin_coeffs.size() == 2);
  CHECK(c.initial.seed == 42);
  CHECK(c.initial.modes == 3);
  CHECK(c.solver.sigma == 0.25);
  CHECK(c.solver.monitor_every == 0.05);
  CHECK(c.output_dir == "out/dir");
  CHECK_FALSE(c.checks);
  CHECK(c.check_tol == 0.1);
}

TEST_CASE("validation errors name the field") {
  auto field_of = [](const std::string& text) {
    const ConfigError e = parse_failure(text);
    CHECK(e.code() == ErrorCode::Validation);
    CHECK(e.line() == 0);
    return e.field();
  };
  CHECK(field_of("[grid]\nn_r = 4\n") == "grid.n_r");
  CHECK(field_of("[grid]\nn_theta = 33\n") == "grid.n_theta");
  CHECK(field_of("[initial]\nkind = plane\na = 0.8 0.7\n") == "initial.a");
  CHECK(field_of("[initial]\nkind = bump\nbeta = 0.4\n") == "initial.beta");
  CHECK(field_of("[solver]\nsigma = 1.5\n") == "solver.sigma");
  CHECK(field_of("[solver]\neps_space = 0.01\n") == "solver.eps_space");
  CHECK(field_of("[domain]\nradius = -1\n") == "domain.radius");
  CHECK(field_of("[alpha]\nkind = compatible\n") == "alpha.kind");
  CHECK(field_of("[domain]\nkind = radial-fourier\ncos = 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0.01\n") ==
        "domain.cos");
}

TEST_CASE("parse errors carry the line number") {
  const ConfigError typo = parse_failure("[alpha]\nvalue = 0.5\nalpha_typo = 1\n");
  CHECK(typo.code() == ErrorCode::Parse);
  CHECK(typo.line() == 3);
  CHECK(std::string(typo.what()).find("alpha_typo") != std::string::npos);

  CHECK(parse_failure("[nonsense]\n").line() == 1);
  CHECK(parse_failure("radius = 1\n").code() == ErrorCode::Parse);
  CHECK(parse_failure("[domain]\nradius\n").line() == 2);
  CHECK(parse_failure("[domain]\nradius = 1\nradius = 2\n").line() == 3);
  CHECK(parse_failure("[domain]\nradius = one\n").field() == "domain.radius");
  CHECK(parse_failure("[grid]\nn_r = -3\n").code() == ErrorCode::Parse);
  CHECK(parse_failure("[checks]\nenabled = yes\n").code() == ErrorCode::Parse);
  CHECK(parse_failure("[domain]\nkind = square\n").code() == ErrorCode::Parse);
  CHECK(parse_failure("[domain\n").code() == ErrorCode::Parse);
}

TEST_CASE("missing config file is an io error") {
  try {
    load_config("/nonexistent/dir/run.ini");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
    CHECK(std::string(e.what()).find("/nonexistent/dir/run.ini") != std::string::npos);
  }
}

TEST_CASE("initial data catalogue") {
  Domain d(DomainSpec::disk(1.0), AnglePrescription::constant(0.0), 512);
  Grid g(d, 16, 32);

  InitialSpec bump;
  bump.kind = InitialKind::Bump;
  bump.beta = 0.2;
  const Field b = make_initial_field(bump, g);
  const double r0 = g.radius(0);
  CHECK(b(0, 5) == doctest::Approx(0.2 * (1 - r0 * r0) * (1 - r0 * r0)));

  InitialSpec plane;
  plane.kind = InitialKind::Plane;
  plane.slope = {0.3, -0.4};
  const Field p = make_initial_field(plane, g);
  const Vec2 x = g.position(7, 9);
  CHECK(p(7, 9) == doctest::Approx(0.3 * x.x - 0.4 * x.y));

  InitialSpec rnd;
  rnd.kind = InitialKind::Fourier;
  rnd.seed = 3;
  rnd.max_slope = 0.6;
  const Field f1 = make_initial_field(rnd, g);
  const Field f2 = make_initial_field(rnd, g);
  rnd.seed = 4;
  const Field f3 = make_initial_field(rnd, g);
  bool differs = false;
  for (std::size_t i = 0; i < f1.size(); ++i) {
    CHECK(f1.values()[i] == f2.values()[i]);
    differs = differs || f1.values()[i] != f3.values()[i];
  }
  CHECK(differs);
  // slope rescaled to max_slope; the closed ghost ring keeps it spacelike
  const Field closed = close_ghost(g, d, f1);
  CHECK(spacelike_margin(g, closed) > 1.0 - 0.7 * 0.7);
}

TEST_CASE("angle prescription from the configuration") {
  RunConfig c = parse_config("[alpha]\nkind = compatible\n[initial]\nkind = plane\na = 0.6 0\n");
  const AnglePrescription a = make_angle(c);
  CHECK(a.kind == AngleKind::CompatiblePlane);
  Domain d(DomainSpec::disk(1.0), a, 256);
  CHECK(d.alpha(0.0) == doctest::Approx(0.75));
}
