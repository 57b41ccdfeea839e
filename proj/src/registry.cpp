#include "sphcode/registry.hpp"

#include <array>
#include <map>
#include <optional>

#include "sphcode/errors.hpp"
#include "sphcode/io.hpp"

namespace sphcode {

namespace {

enum Col { kLog, kR1, kR2 };

struct Known {
  const char* spec;
  const char* description;
  std::vector<std::string> names;
  // Per potential column; empty when the column is not registered.
  std::array<std::vector<const char*>, 3> seeds;
  // Structures without parameters: which columns are the known optimum.
  std::array<bool, 3> fixed{false, false, false};
};

const char* const kSpec32 =
    "free z=sqrt((3+sqrt(5))/6) x=sqrt((3-sqrt(5))/6) y=+\n"
    "free z=sqrt((3+sqrt(5))/6) x=-sqrt((3-sqrt(5))/6) y=+\n"
    "free z=sqrt((5+sqrt(5))/10) x=0 y=+\n"
    "free z=sqrt((5+sqrt(5))/10) x=0 y=-\n"
    "free z=sqrt(1/3) x=sqrt(1/3) y=+\n"
    "free z=sqrt(1/3) x=-sqrt(1/3) y=+\n"
    "free z=sqrt(1/3) x=sqrt(1/3) y=-\n"
    "free z=sqrt(1/3) x=-sqrt(1/3) y=-\n"
    "free z=sqrt((5-sqrt(5))/10) x=sqrt((5+sqrt(5))/10) y=+\n"
    "free z=sqrt((5-sqrt(5))/10) x=-sqrt((5+sqrt(5))/10) y=+\n"
    "free z=sqrt((3-sqrt(5))/6) x=0 y=+\n"
    "free z=sqrt((3-sqrt(5))/6) x=0 y=-\n"
    "free z=0 x=-sqrt((3+sqrt(5))/6) y=+\n"
    "free z=0 x=-sqrt((3+sqrt(5))/6) y=-\n"
    "free z=0 x=-sqrt((5-sqrt(5))/10) y=+\n"
    "free z=0 x=-sqrt((5-sqrt(5))/10) y=-\n"
    "free z=0 x=sqrt((5-sqrt(5))/10) y=+\n"
    "free z=0 x=sqrt((5-sqrt(5))/10) y=-\n"
    "free z=0 x=sqrt((3+sqrt(5))/6) y=+\n"
    "free z=0 x=sqrt((3+sqrt(5))/6) y=-\n"
    "free z=-sqrt((3-sqrt(5))/6) x=0 y=+\n"
    "free z=-sqrt((3-sqrt(5))/6) x=0 y=-\n"
    "free z=-sqrt((5-sqrt(5))/10) x=sqrt((5+sqrt(5))/10) y=+\n"
    "free z=-sqrt((5-sqrt(5))/10) x=-sqrt((5+sqrt(5))/10) y=+\n"
    "free z=-sqrt(1/3) x=sqrt(1/3) y=+\n"
    "free z=-sqrt(1/3) x=-sqrt(1/3) y=+\n"
    "free z=-sqrt(1/3) x=sqrt(1/3) y=-\n"
    "free z=-sqrt(1/3) x=-sqrt(1/3) y=-\n"
    "free z=-sqrt((5+sqrt(5))/10) x=0 y=+\n"
    "free z=-sqrt((5+sqrt(5))/10) x=0 y=-\n"
    "free z=-sqrt((3+sqrt(5))/6) x=sqrt((3-sqrt(5))/6) y=+\n"
    "free z=-sqrt((3+sqrt(5))/6) x=-sqrt((3-sqrt(5))/6) y=+\n";

const std::map<std::size_t, Known>& table() {
  static const std::map<std::size_t, Known> t = {
      {5,
       {"pole +\nring 3 z=0 phase=0\npole -\n", "triangular bipyramid", {}, {}, {true, true, true}}},
      {7, {"pole +\nring 5 z=0 phase=0\npole -\n", "pentagonal bipyramid", {}, {}, {false, false, true}}},
      {8,
       {"ring 4 z=$a phase=1/8\nring 4 z=-$a phase=0\n",
        "square antiprism",
        {"a"},
        {{{"0.5646169639331753669"}, {"0.5604367652904311982"}, {"0.5563309621802899475"}}}}},
      {9,
       {"ring 3 z=$a phase=1/4\nring 3 z=0 phase=3/4\nring 3 z=-$a phase=1/4\n",
        "three stacked triangles",
        {"a"},
        {{{"0.7031106068430678248"}, {"0.7036483958041317758"}, {"0.7046074370271068597"}}}}},
      {10,
       {"pole +\nring 4 z=$a phase=0\nring 4 z=-$a phase=1/8\npole -\n",
        "poles and two twisted squares",
        {"a"},
        {{{"0.4204838855379730022"}, {"0.4226874240439860662"}, {"0.4242756082881730876"}}}}},
      {12,
       {"pole +\nring 5 z=sqrt(1/5) phase=0\nring 5 z=-sqrt(1/5) phase=1/10\npole -\n",
        "icosahedron",
        {},
        {},
        {true, true, true}}},
      {14,
       {"pole +\nring 2 z=$a phase=0\n"
        "free z=$a x=$b y=+\nfree z=$a x=$b y=-\nfree z=$a x=-$b y=+\nfree z=$a x=-$b y=-\n"
        "ring 2 z=-$a phase=1/4\n"
        "free z=-$a x=$c y=+\nfree z=-$a x=$c y=-\nfree z=-$a x=-$c y=+\nfree z=-$a x=-$c y=-\n"
        "pole -\n",
        "poles and two six-point layers",
        {"a", "b", "c"},
        {{{"0.4591508204907729375", "0.4441791654396483527", "0.7693408822050128806"},
          {"0.4553677951624630035", "0.4451517076033959054", "0.7710253746451266125"},
          {"0.4518625916952697588", "0.4460437753815296572", "0.7725704813606493514"}}}}},
      {17,
       {"pole +\nring 5 z=$a phase=1/2\nring 5 z=0 phase=0\nring 5 z=-$a phase=1/2\npole -\n",
        "poles and three pentagons",
        {"a"},
        {{{"0.6076810889242587549"}, {"0.6095575990554807772"}, {"0.6117975792003008025"}}}}},
      {18,
       {"pole +\nring 4 z=$a phase=0\nring 4 z=$b phase=1/8\nring 4 z=-$b phase=0\nring 4 z=-$a phase=1/8\npole -\n",
        "poles and four squares",
        {"a", "b"},
        {{{"0.6754406562091057220", "0.2063761761970050338"},
          {"0.6751471684502996248", "0.2034104243431649960"},
          {"0.6743335122024262360", "0.2007314823505518450"}}}}},
      {27,
       {"pole +\nring 5 z=$a phase=0\nring 5 z=$b phase=1/2\nring 5 z=0 phase=0\nring 5 z=-$b phase=1/2\n"
        "ring 5 z=-$a phase=0\npole -\n",
        "poles and five pentagons",
        {"a", "b"},
        {{{"0.7538089984441335383", "0.3604942753234939635"},
          {"0.7538564449703482744", "0.3589242703564896574"},
          {"0.7539171374221273508", "0.3574199262261141346"}}}}},
      {32, {kSpec32, "icosahedron with dual dodecahedron", {}, {}, {true, true, true}}},
      {38,
       {"pole +\nring 6 z=$a phase=1/4\nring 6 z=$b phase=0\nring 6 z=$c phase=1/4\nring 6 z=-$c phase=0\n"
        "ring 6 z=-$b phase=1/4\nring 6 z=-$a phase=0\npole -\n",
        "poles and six hexagons",
        {"a", "b", "c"},
        {{{"0.8039422032494780264", "0.4583733204758793321", "0.1721603867747475720"},
          {"0.8031706352420300965", "0.4581934070811996284", "0.1698720444743110028"},
          {"0.8024795013067287797", "0.4577217788720220286", "0.1675495508816995084"}}}}},
      {50,
       {"pole +\nring 6 z=$a phase=0\nring 6 z=$b phase=1/4\nring 6 z=$c phase=0\nring 6 z=$d phase=1/4\n"
        "ring 6 z=-$d phase=0\nring 6 z=-$c phase=1/4\nring 6 z=-$b phase=0\nring 6 z=-$a phase=1/4\npole -\n",
        "poles and eight hexagons",
        {"a", "b", "c", "d"},
        {{{"0.8515838011853908757", "0.5845080765467688786", "0.3823580555306074125", "0.1056903533827164585"},
          {"0.8513832027240754402", "0.5859466784603221965", "0.3828907922740789633", "0.1079740016327089417"},
          {"0.8514411311335073360", "0.5875147416660090262", "0.3834970349379620340", "0.1100866382336972714"}}}}},
  };
  return t;
}

std::optional<Col> column(const Potential& pot) {
  if (pot.is_log()) return kLog;
  if (pot.s == 1) return kR1;
  if (pot.s == 2) return kR2;
  return std::nullopt;
}

}  // namespace

RegistryEntry builtin_spec(std::size_t n, const Potential& pot, int digits) {
  const auto& t = table();
  auto it = t.find(n);
  const auto col = column(pot);
  const auto missing = [&] {
    return Unregistered("no built-in structure for n=" + std::to_string(n) + " under " + pot.token());
  };
  if (it == t.end() || !col) throw missing();
  const Known& k = it->second;
  RegistryEntry e;
  e.spec = parse_spec_text(k.spec);
  e.description = k.description;
  if (k.names.empty()) {
    if (!k.fixed[*col]) throw missing();
  } else {
    const auto& s = k.seeds[*col];
    if (s.empty()) throw missing();
    e.seed.names = k.names;
    for (const char* v : s) e.seed.values.push_back(BigReal::parse(v, digits));
  }
  return e;
}

std::vector<std::size_t> registered_sizes() {
  std::vector<std::size_t> out;
  for (const auto& [n, k] : table()) out.push_back(n);
  return out;
}

}  // namespace sphcode
