#include "mtower/charts.hpp"
#include "mtower/errors.hpp"

namespace mtower::charts {

namespace {

std::vector<Fixture> make_fixtures() {
  const std::vector<std::string> head{"dx0 - x1*dt", "dy0 - y1*dt", "dt - x2*dx1", "dy1 - y2*dx1"};
  auto lines = [&](std::vector<std::string> tail) {
    std::vector<std::string> all = head;
    all.insert(all.end(), tail.begin(), tail.end());
    return all;
  };
  std::vector<Fixture> f;
  f.push_back({"zzz",
               "1.2.3.1.2",
               parse_constants({"step4=1,1", "step5=y:a"}),
               lines({"dx1 - x3*dy2", "dx2 - y3*dy2", "dx3 - (1+x4)*dy2", "dy3 - (1+y4)*dy2", "dy2 - x5*dx4",
                      "dy4 - (a+y5)*dx4"}),
               "One-parameter family in 1.2.3.1.2. The generator Z_{1,a} of this germ is often typeset with "
               "d/dy3 appearing twice; the Pfaffian equations (dx1 - x3 dy2, dx2 - y3 dy2) fix the second "
               "occurrence as d/dy2, which is what the chart produces."});
  f.push_back({"212",
               "1.2.2.1.2",
               parse_constants({"step4=1,1", "step5=y:c"}),
               lines({"dx1 - x3*dx2", "dy2 - y3*dx2", "dx3 - (1+x4)*dx2", "dy3 - (1+y4)*dx2", "dx2 - x5*dx4",
                      "dy4 - (c+y5)*dx4"}),
               "One-parameter family in 1.2.2.1.2."});
  f.push_back({"121",
               "1.2.1.2.1",
               parse_constants({"step3=1,0", "step4=y:1", "step5=0,c"}),
               lines({"dx2 - (1+x3)*dx1", "dy2 - y3*dx1", "dx1 - x4*dx3", "dy3 - (1+y4)*dx3", "dx4 - x5*dx3",
                      "dy4 - (c+y5)*dx3"}),
               "One-parameter family in 1.2.1.2.1 on the tangency stratum: no additive constant next to x5."});
  f.push_back({"123one",
               "1.2.1.3.1",
               parse_constants({"step3=1,0", "step5=b,c"}),
               lines({"dx2 - (1+x3)*dx1", "dy2 - y3*dx1", "dx1 - x4*dy3", "dx3 - y4*dy3", "dx4 - (b+x5)*dy3",
                      "dy4 - (c+y5)*dy3"}),
               "Prolongation in 1.2.1.3.1 of the codimension-3 orbit of 1.2.1.3; normalizes to b = 1, c = sgn(c)."});
  f.push_back({"121two",
               "1.2.1.3.1",
               parse_constants({"step3=0,1", "step5=b,c"}),
               lines({"dx2 - x3*dx1", "dy2 - (1+y3)*dx1", "dx1 - x4*dy3", "dx3 - y4*dy3", "dx4 - (b+x5)*dy3",
                      "dy4 - (c+y5)*dy3"}),
               "Prolongation in 1.2.1.3.1 of the codimension-4 orbit of 1.2.1.3; normalizes to b = c = 1."});
  f.push_back({"121three",
               "1.2.1.3.1",
               parse_constants({"step3=0,0", "step5=b,c"}),
               lines({"dx2 - x3*dx1", "dy2 - y3*dx1", "dx1 - x4*dy3", "dx3 - y4*dy3", "dx4 - (b+x5)*dy3",
                      "dy4 - (c+y5)*dy3"}),
               "Prolongation in 1.2.1.3.1 of the codimension-5 orbit of 1.2.1.3; same rescaling as 121two."});
  return f;
}

}  // namespace

const std::vector<Fixture>& named_fixtures() {
  static const std::vector<Fixture> fixtures = make_fixtures();
  return fixtures;
}

const Fixture& fixture(std::string_view name) {
  for (const auto& f : named_fixtures()) {
    if (f.name == name) return f;
  }
  std::string known;
  for (const auto& f : named_fixtures()) known += (known.empty() ? "" : ", ") + f.name;
  throw DomainError("unknown fixture '" + std::string(name) + "' (known: " + known + ")");
}

Chart build_fixture(std::string_view name, const ChartOptions& options) {
  const auto& f = fixture(name);
  return build_chart(f.code, f.constants, options);
}

}  // namespace mtower::charts
