#include "sdr/domains.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "sdr/errors.hpp"

namespace sdr {

namespace {

class Params {
 public:
  Params(std::string family, const std::map<std::string, long long>& given)
      : family_(std::move(family)), given_(given) {}

  long long get(const std::string& key, long long fallback, long long lo, long long hi) {
    used_.insert(key);
    auto it = given_.find(key);
    const long long v = it == given_.end() ? fallback : it->second;
    if (v < lo || v > hi) {
      throw InvalidParams(family_ + ": " + key + "=" + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    }
    values_[key] = v;
    return v;
  }

  // Call after every get(): rejects keys the family does not know.
  void finish() const {
    for (const auto& [k, v] : given_) {
      if (!used_.count(k)) throw InvalidParams(family_ + ": unknown parameter '" + k + "'");
    }
  }

  std::string summary() const {
    std::string out;
    for (const auto& [k, v] : values_) out += (out.empty() ? "" : " ") + k + "=" + std::to_string(v);
    return out;
  }

 private:
  std::string family_;
  const std::map<std::string, long long>& given_;
  std::set<std::string> used_;
  std::map<std::string, long long> values_;
};

std::string cell(long long x, long long y) { return std::to_string(x) + "-" + std::to_string(y); }

std::string header(const std::string& family, const Params& p, std::uint64_t seed, const std::string& encoding) {
  std::ostringstream os;
  os << "; family: " << family << "\n; params: " << p.summary() << "\n; seed: " << seed << "\n";
  std::istringstream lines(encoding);
  std::string line;
  while (std::getline(lines, line)) os << "; " << line << "\n";
  return os.str();
}

struct Grid {
  long long w, h;
  std::vector<std::string> cells() const {
    std::vector<std::string> out;
    for (long long x = 1; x <= w; ++x) {
      for (long long y = 1; y <= h; ++y) out.push_back(cell(x, y));
    }
    return out;
  }
  std::vector<std::pair<long long, long long>> neighbors(long long x, long long y) const {
    std::vector<std::pair<long long, long long>> out;
    const long long dx[] = {1, -1, 0, 0};
    const long long dy[] = {0, 0, 1, -1};
    for (int i = 0; i < 4; ++i) {
      const long long nx = x + dx[i], ny = y + dy[i];
      if (nx >= 1 && nx <= w && ny >= 1 && ny <= h) out.emplace_back(nx, ny);
    }
    return out;
  }
  std::string adjacency() const {
    std::ostringstream os;
    for (long long x = 1; x <= w; ++x) {
      for (long long y = 1; y <= h; ++y) {
        for (auto [nx, ny] : neighbors(x, y)) os << "    (adj " << cell(x, y) << " " << cell(nx, ny) << ")\n";
      }
    }
    return os.str();
  }
};

std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

enum class WumpusKind { Safe, DeadEnd, Restart };

GeneratedInstance wumpus(const DomainSpec& spec, WumpusKind kind) {
  Params p(spec.family, spec.params);
  const long long n = p.get("n", 4, 4, 20);
  const long long pairs = p.get("pairs", 2, 1, n - 2);
  p.finish();
  const Grid g{n, n};

  std::string encoding =
      "n x n grid, start 1-1, goal n-n. Each of the top `pairs` diagonal squares k-k (k = n-pairs+1 .. n)\n"
      "has a wumpus in exactly one of (k-1)-k, k-(k-1). Stench in the 4-neighborhood of each wumpus.\n";
  std::string move;
  std::string extra_actions;
  std::string predicates = "(at ?c - cell) (adj ?a ?b - cell) (wumpus-at ?c - cell) (stench-at ?c - cell)";
  std::string smell_pre = "(at ?c)";
  switch (kind) {
    case WumpusKind::Safe:
      encoding += "Moving requires the target square to be wumpus-free.\n";
      move =
          "  (:action move\n    :parameters (?from ?to - cell)\n"
          "    :precondition (and (at ?from) (adj ?from ?to) (not (wumpus-at ?to)))\n"
          "    :effect (and (not (at ?from)) (at ?to)))\n";
      break;
    case WumpusKind::DeadEnd:
      encoding += "Moves need not be safe: entering a wumpus square falsifies alive, and every action needs alive.\n";
      predicates += " (alive)";
      smell_pre = "(at ?c) (alive)";
      move =
          "  (:action move\n    :parameters (?from ?to - cell)\n"
          "    :precondition (and (at ?from) (adj ?from ?to) (alive))\n"
          "    :effect (and (not (at ?from)) (at ?to) (when (wumpus-at ?to) (not (alive)))))\n";
      break;
    case WumpusKind::Restart:
      encoding +=
          "Moves need not be safe: entering a wumpus square sends the agent back to 1-1.\n"
          "feel-start senses whether the agent is at 1-1.\n";
      move =
          "  (:action move\n    :parameters (?from ?to - cell)\n"
          "    :precondition (and (at ?from) (adj ?from ?to))\n"
          "    :effect (and (when (not (wumpus-at ?to)) (and (not (at ?from)) (at ?to)))\n"
          "                 (when (and (wumpus-at ?to) (not (at 1-1))) (and (not (at ?from)) (at 1-1)))))\n";
      extra_actions = "  (:action feel-start\n    :parameters ()\n    :observe (at 1-1))\n";
      break;
  }

  std::ostringstream d;
  d << header(spec.family, p, spec.seed, encoding);
  d << "(define (domain " << spec.family << ")\n  (:types cell)\n";
  if (kind == WumpusKind::Restart) d << "  (:constants 1-1 - cell)\n";
  d << "  (:predicates " << predicates << ")\n" << move;
  d << "  (:action smell\n    :parameters (?c - cell)\n    :precondition (and " << smell_pre
    << ")\n    :observe (stench-at ?c))\n";
  d << extra_actions << ")\n";

  std::vector<std::string> objects = g.cells();
  if (kind == WumpusKind::Restart) objects.erase(std::find(objects.begin(), objects.end(), "1-1"));

  // Candidate wumpus squares and the stench each one causes.
  std::map<std::pair<long long, long long>, std::vector<std::string>> stench_sources;
  std::ostringstream oneofs;
  for (long long k = n - pairs + 1; k <= n; ++k) {
    const std::pair<long long, long long> sq[] = {{k - 1, k}, {k, k - 1}};
    oneofs << "    (oneof (wumpus-at " << cell(sq[0].first, sq[0].second) << ") (wumpus-at "
           << cell(sq[1].first, sq[1].second) << "))\n";
    for (auto [x, y] : sq) {
      for (auto nb : g.neighbors(x, y)) stench_sources[nb].push_back("(wumpus-at " + cell(x, y) + ")");
    }
  }

  std::ostringstream pr;
  pr << header(spec.family, p, spec.seed, encoding);
  pr << "(define (problem " << spec.family << "-" << n << ")\n  (:domain " << spec.family << ")\n";
  pr << "  (:objects " << join(objects) << " - cell)\n  (:init\n    (at 1-1)\n";
  if (kind == WumpusKind::DeadEnd) pr << "    (alive)\n";
  pr << g.adjacency() << oneofs.str();
  for (const auto& [c, sources] : stench_sources) {
    const std::string s = "(stench-at " + cell(c.first, c.second) + ")";
    pr << "    (or (not " << s << ") " << join(sources) << ")\n";
    for (const auto& w : sources) pr << "    (or (not " << w << ") " << s << ")\n";
  }
  pr << "  )\n  (:goal (and (at " << cell(n, n) << ")" << (kind == WumpusKind::DeadEnd ? " (alive)" : "") << ")))\n";
  return {d.str(), pr.str()};
}

GeneratedInstance doors(const DomainSpec& spec) {
  Params p(spec.family, spec.params);
  const long long n = p.get("n", 5, 3, 21);
  p.finish();
  if (n % 2 == 0) throw InvalidParams("doors: n must be odd");
  const Grid g{n, n};
  const long long mid = (n + 1) / 2;
  const std::string encoding =
      "n x n grid, start 1-mid, goal n-mid (mid = (n+1)/2). Every even column is a wall with exactly one\n"
      "open door (oneof over its n rows). try senses whether an adjacent square is open; move needs it open.\n";

  std::ostringstream d;
  d << header(spec.family, p, spec.seed, encoding);
  d << "(define (domain doors)\n  (:types cell)\n  (:predicates (at ?c - cell) (adj ?a ?b - cell) (open ?c - cell))\n"
    << "  (:action move\n    :parameters (?from ?to - cell)\n"
    << "    :precondition (and (at ?from) (adj ?from ?to) (open ?to))\n"
    << "    :effect (and (not (at ?from)) (at ?to)))\n"
    << "  (:action try\n    :parameters (?from ?to - cell)\n"
    << "    :precondition (and (at ?from) (adj ?from ?to))\n    :observe (open ?to)))\n";

  std::ostringstream pr;
  pr << header(spec.family, p, spec.seed, encoding);
  pr << "(define (problem doors-" << n << ")\n  (:domain doors)\n  (:objects " << join(g.cells()) << " - cell)\n"
     << "  (:init\n    (at " << cell(1, mid) << ")\n"
     << g.adjacency();
  for (long long x = 1; x <= n; ++x) {
    if (x % 2 == 0) {
      pr << "    (oneof";
      for (long long y = 1; y <= n; ++y) pr << " (open " << cell(x, y) << ")";
      pr << ")\n";
    } else {
      for (long long y = 1; y <= n; ++y) pr << "    (open " << cell(x, y) << ")\n";
    }
  }
  pr << "  )\n  (:goal (and (at " << cell(n, mid) << "))))\n";
  return {d.str(), pr.str()};
}

GeneratedInstance unix_tree(const DomainSpec& spec) {
  Params p(spec.family, spec.params);
  const long long depth = p.get("depth", 2, 1, 6);
  p.finish();
  const std::string encoding =
      "Complete binary folder tree of the given depth rooted at f; the file is in exactly one folder.\n"
      "ls senses the current folder, mv moves the file from the current folder to the root.\n";

  std::vector<std::string> folders{"f"};
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < folders.size(); ++i) {
    if (static_cast<long long>(folders[i].size()) - 1 >= depth) continue;
    for (const char b : {'0', '1'}) {
      folders.push_back(folders[i] + b);
      edges.emplace_back(folders[i], folders.back());
    }
  }

  std::ostringstream d;
  d << header(spec.family, p, spec.seed, encoding);
  d << "(define (domain unix)\n  (:types folder)\n"
    << "  (:predicates (at ?d - folder) (child ?p ?c - folder) (file-in ?d - folder) (root ?d - folder))\n"
    << "  (:action cd-down\n    :parameters (?p ?c - folder)\n    :precondition (and (at ?p) (child ?p ?c))\n"
    << "    :effect (and (not (at ?p)) (at ?c)))\n"
    << "  (:action cd-up\n    :parameters (?c ?p - folder)\n    :precondition (and (at ?c) (child ?p ?c))\n"
    << "    :effect (and (not (at ?c)) (at ?p)))\n"
    << "  (:action ls\n    :parameters (?d - folder)\n    :precondition (and (at ?d))\n    :observe (file-in ?d))\n"
    << "  (:action mv\n    :parameters (?d ?r - folder)\n"
    << "    :precondition (and (at ?d) (file-in ?d) (root ?r) (not (root ?d)))\n"
    << "    :effect (and (not (file-in ?d)) (file-in ?r))))\n";

  std::ostringstream pr;
  pr << header(spec.family, p, spec.seed, encoding);
  pr << "(define (problem unix-" << depth << ")\n  (:domain unix)\n  (:objects " << join(folders)
     << " - folder)\n  (:init\n    (at f)\n    (root f)\n";
  for (const auto& [a, b] : edges) pr << "    (child " << a << " " << b << ")\n";
  pr << "    (oneof";
  for (const auto& f : folders) pr << " (file-in " << f << ")";
  pr << ")\n  )\n  (:goal (and (file-in f))))\n";
  return {d.str(), pr.str()};
}

GeneratedInstance localize(const DomainSpec& spec) {
  Params p(spec.family, spec.params);
  const long long n = p.get("n", 3, 2, 8);
  p.finish();
  const Grid g{n, n};
  const std::string encoding =
      "Known open n x n map bounded by walls; the start square is unknown (oneof over all squares); goal n-n.\n"
      "Moves clear the four wall flags; feel-walls sets them from the current square; sense-* observe them.\n";

  struct Dir {
    const char* name;
    long long dx, dy;
  };
  const Dir dirs[] = {{"right", 1, 0}, {"left", -1, 0}, {"up", 0, 1}, {"down", 0, -1}};

  std::ostringstream d;
  d << header(spec.family, p, spec.seed, encoding);
  d << "(define (domain localize)\n  (:types cell)\n  (:constants " << join(g.cells()) << " - cell)\n"
    << "  (:predicates (at ?c - cell) (wall-right) (wall-left) (wall-up) (wall-down))\n";
  for (const auto& dir : dirs) {
    d << "  (:action move-" << dir.name << "\n    :parameters ()\n    :effect (and";
    for (const auto& w : dirs) d << " (not (wall-" << w.name << "))";
    for (long long x = 1; x <= n; ++x) {
      for (long long y = 1; y <= n; ++y) {
        const long long nx = x + dir.dx, ny = y + dir.dy;
        if (nx < 1 || nx > n || ny < 1 || ny > n) continue;
        const std::string from = cell(x, y), to = cell(nx, ny);
        d << "\n      (when (and (at " << from << ") (not (at " << to << "))) (and (not (at " << from << ")) (at "
          << to << ")))";
      }
    }
    d << "))\n";
  }
  d << "  (:action feel-walls\n    :parameters ()\n    :effect (and";
  for (long long x = 1; x <= n; ++x) {
    for (long long y = 1; y <= n; ++y) {
      std::vector<std::string> walls;
      for (const auto& dir : dirs) {
        const long long nx = x + dir.dx, ny = y + dir.dy;
        if (nx < 1 || nx > n || ny < 1 || ny > n) walls.push_back(std::string("(wall-") + dir.name + ")");
      }
      if (!walls.empty()) d << "\n      (when (at " << cell(x, y) << ") (and " << join(walls) << "))";
    }
  }
  d << "))\n";
  for (const auto& dir : dirs) {
    d << "  (:action sense-" << dir.name << "\n    :parameters ()\n    :observe (wall-" << dir.name << "))\n";
  }
  d << ")\n";

  std::ostringstream pr;
  pr << header(spec.family, p, spec.seed, encoding);
  pr << "(define (problem localize-" << n << ")\n  (:domain localize)\n  (:init\n    (oneof";
  for (const auto& c : g.cells()) pr << " (at " << c << ")";
  pr << ")\n  )\n  (:goal (and (at " << cell(n, n) << "))))\n";
  return {d.str(), pr.str()};
}

GeneratedInstance colorballs(const DomainSpec& spec) {
  Params p(spec.family, spec.params);
  const long long n = p.get("n", 3, 2, 6);
  const long long balls = p.get("balls", 1, 1, 4);
  const long long colors = p.get("colors", 2, 1, n);
  p.finish();
  const Grid g{n, n};
  const std::string encoding =
      "n x n grid, agent starts at 1-1. Each ball lies in one unknown square (oneof over squares) and has one\n"
      "unknown color (oneof over colors). The bin for color i is at i-1. look senses a ball in the current\n"
      "square, inspect senses the color of the held ball, drop delivers it at the bin of its color.\n";

  std::vector<std::string> ball_names, color_names;
  for (long long b = 1; b <= balls; ++b) ball_names.push_back("b" + std::to_string(b));
  for (long long k = 1; k <= colors; ++k) color_names.push_back("col" + std::to_string(k));

  std::ostringstream d;
  d << header(spec.family, p, spec.seed, encoding);
  d << "(define (domain colorballs)\n  (:types cell ball color)\n"
    << "  (:predicates (at ?c - cell) (adj ?a ?b - cell) (ball-at ?b - ball ?c - cell) (color ?b - ball ?k - color)\n"
    << "               (holding ?b - ball) (hand-empty) (bin ?c - cell ?k - color) (delivered ?b - ball))\n"
    << "  (:action move\n    :parameters (?from ?to - cell)\n    :precondition (and (at ?from) (adj ?from ?to))\n"
    << "    :effect (and (not (at ?from)) (at ?to)))\n"
    << "  (:action look\n    :parameters (?b - ball ?c - cell)\n    :precondition (and (at ?c))\n"
    << "    :observe (ball-at ?b ?c))\n"
    << "  (:action pickup\n    :parameters (?b - ball ?c - cell)\n"
    << "    :precondition (and (at ?c) (ball-at ?b ?c) (hand-empty))\n"
    << "    :effect (and (not (ball-at ?b ?c)) (holding ?b) (not (hand-empty))))\n"
    << "  (:action inspect\n    :parameters (?b - ball ?k - color)\n    :precondition (and (holding ?b))\n"
    << "    :observe (color ?b ?k))\n"
    << "  (:action drop\n    :parameters (?b - ball ?k - color ?c - cell)\n"
    << "    :precondition (and (holding ?b) (color ?b ?k) (bin ?c ?k) (at ?c))\n"
    << "    :effect (and (not (holding ?b)) (hand-empty) (delivered ?b))))\n";

  std::ostringstream pr;
  pr << header(spec.family, p, spec.seed, encoding);
  pr << "(define (problem colorballs-" << n << "-" << balls << ")\n  (:domain colorballs)\n"
     << "  (:objects " << join(g.cells()) << " - cell " << join(ball_names) << " - ball " << join(color_names)
     << " - color)\n  (:init\n    (at 1-1)\n    (hand-empty)\n"
     << g.adjacency();
  for (long long k = 1; k <= colors; ++k) pr << "    (bin " << cell(k, 1) << " " << color_names[k - 1] << ")\n";
  for (const auto& b : ball_names) {
    pr << "    (oneof";
    for (const auto& c : g.cells()) pr << " (ball-at " << b << " " << c << ")";
    pr << ")\n    (oneof";
    for (const auto& k : color_names) pr << " (color " << b << " " << k << ")";
    pr << ")\n";
  }
  pr << "  )\n  (:goal (and";
  for (const auto& b : ball_names) pr << " (delivered " << b << ")";
  pr << ")))\n";
  return {d.str(), pr.str()};
}

GeneratedInstance rocksample(const DomainSpec& spec) {
  Params p(spec.family, spec.params);
  const long long n = p.get("n", 5, 3, 8);
  const long long rocks = p.get("rocks", 4, 1, 14);
  const long long levels = p.get("levels", 2, 0, 4);
  p.finish();
  if (rocks > n * n - 1) throw InvalidParams("rocksample: more rocks than free squares");
  const Grid g{n, n};
  const std::string encoding =
      "n x n grid, rover starts at 1-1. Rock squares are drawn from the seed. Each rock is good or bad (oneof).\n"
      "The antenna level (0..levels, known, starts at 0) bounds the Manhattan range of sense.\n"
      "sample needs a good rock under the rover, skip needs a known bad rock; every rock must be done.\n";

  std::vector<std::pair<long long, long long>> squares;
  for (long long x = 1; x <= n; ++x) {
    for (long long y = 1; y <= n; ++y) {
      if (x != 1 || y != 1) squares.emplace_back(x, y);
    }
  }
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = 0; i + 1 < squares.size(); ++i) {
    const std::size_t j = i + rng() % (squares.size() - i);
    std::swap(squares[i], squares[j]);
  }
  squares.resize(static_cast<std::size_t>(rocks));

  std::vector<std::string> rock_names, level_names;
  for (long long r = 1; r <= rocks; ++r) rock_names.push_back("r" + std::to_string(r));
  for (long long l = 0; l <= levels; ++l) level_names.push_back("l" + std::to_string(l));

  std::ostringstream d;
  d << header(spec.family, p, spec.seed, encoding);
  d << "(define (domain rocksample)\n  (:types cell rock level)\n"
    << "  (:predicates (at ?c - cell) (adj ?a ?b - cell) (rock-at ?r - rock ?c - cell) (good ?r - rock)\n"
    << "               (bad ?r - rock) (antenna ?l - level) (higher ?a ?b - level)\n"
    << "               (in-range ?c ?t - cell ?l - level) (done ?r - rock))\n"
    << "  (:action move\n    :parameters (?from ?to - cell)\n    :precondition (and (at ?from) (adj ?from ?to))\n"
    << "    :effect (and (not (at ?from)) (at ?to)))\n"
    << "  (:action raise\n    :parameters (?a ?b - level)\n    :precondition (and (antenna ?a) (higher ?a ?b))\n"
    << "    :effect (and (not (antenna ?a)) (antenna ?b)))\n"
    << "  (:action lower\n    :parameters (?a ?b - level)\n    :precondition (and (antenna ?b) (higher ?a ?b))\n"
    << "    :effect (and (not (antenna ?b)) (antenna ?a)))\n"
    << "  (:action sense\n    :parameters (?r - rock ?c ?t - cell ?l - level)\n"
    << "    :precondition (and (at ?c) (rock-at ?r ?t) (antenna ?l) (in-range ?c ?t ?l))\n"
    << "    :observe (good ?r))\n"
    << "  (:action sample\n    :parameters (?r - rock ?c - cell)\n"
    << "    :precondition (and (at ?c) (rock-at ?r ?c) (good ?r))\n    :effect (and (done ?r)))\n"
    << "  (:action skip\n    :parameters (?r - rock)\n    :precondition (and (bad ?r))\n"
    << "    :effect (and (done ?r))))\n";

  std::ostringstream pr;
  pr << header(spec.family, p, spec.seed, encoding);
  pr << "(define (problem rocksample-" << n << "-" << rocks << ")\n  (:domain rocksample)\n"
     << "  (:objects " << join(g.cells()) << " - cell " << join(rock_names) << " - rock " << join(level_names)
     << " - level)\n  (:init\n    (at 1-1)\n    (antenna l0)\n"
     << g.adjacency();
  for (long long l = 0; l < levels; ++l) pr << "    (higher " << level_names[l] << " " << level_names[l + 1] << ")\n";
  for (long long r = 0; r < rocks; ++r) {
    const auto [rx, ry] = squares[static_cast<std::size_t>(r)];
    pr << "    (rock-at " << rock_names[r] << " " << cell(rx, ry) << ")\n";
    pr << "    (oneof (good " << rock_names[r] << ") (bad " << rock_names[r] << "))\n";
    for (long long x = 1; x <= n; ++x) {
      for (long long y = 1; y <= n; ++y) {
        const long long dist = std::abs(x - rx) + std::abs(y - ry);
        for (long long l = dist; l <= levels; ++l) {
          pr << "    (in-range " << cell(x, y) << " " << cell(rx, ry) << " " << level_names[l] << ")\n";
        }
      }
    }
  }
  pr << "  )\n  (:goal (and";
  for (const auto& r : rock_names) pr << " (done " << r << ")";
  pr << ")))\n";
  return {d.str(), pr.str()};
}

GeneratedInstance mastermind(const DomainSpec& spec) {
  Params p(spec.family, spec.params);
  const long long pegs = p.get("pegs", 2, 1, 4);
  const long long colors = p.get("colors", 3, 2, 6);
  p.finish();
  long long codes = 1;
  for (long long i = 0; i < pegs; ++i) codes *= colors;
  if (codes > 64) throw InvalidParams("mastermind: colors^pegs must be at most 64");
  const std::string encoding =
      "Each peg has one hidden color (oneof). A guess sets unary thresholds (exact ?j) = at least j pegs right\n"
      "and (near ?j) = at least j further colors right in the wrong place, via one conditional effect per\n"
      "hidden code. guess needs ready and consumes it; clear resets the thresholds. Goal: all pegs exact.\n";

  std::vector<std::string> peg_names, color_names, count_names;
  for (long long i = 1; i <= pegs; ++i) peg_names.push_back("p" + std::to_string(i));
  for (long long k = 1; k <= colors; ++k) color_names.push_back("c" + std::to_string(k));
  for (long long j = 1; j <= pegs; ++j) count_names.push_back("n" + std::to_string(j));

  auto decode = [&](long long code) {
    std::vector<long long> v(static_cast<std::size_t>(pegs));
    for (auto& x : v) {
      x = code % colors;
      code /= colors;
    }
    return v;
  };

  std::ostringstream d;
  d << header(spec.family, p, spec.seed, encoding);
  d << "(define (domain mastermind)\n  (:types peg color count)\n  (:constants " << join(peg_names) << " - peg "
    << join(color_names) << " - color " << join(count_names) << " - count)\n"
    << "  (:predicates (peg ?p - peg ?c - color) (exact ?j - count) (near ?j - count) (ready))\n";
  for (long long gcode = 0; gcode < codes; ++gcode) {
    const auto guess = decode(gcode);
    d << "  (:action guess";
    for (auto c : guess) d << "-" << color_names[c];
    d << "\n    :parameters ()\n    :precondition (and (ready))\n    :effect (and (not (ready))";
    for (long long scode = 0; scode < codes; ++scode) {
      const auto secret = decode(scode);
      long long exact = 0;
      long long total = 0;
      for (long long i = 0; i < pegs; ++i) exact += guess[i] == secret[i];
      for (long long k = 0; k < colors; ++k) {
        total += std::min(std::count(guess.begin(), guess.end(), k), std::count(secret.begin(), secret.end(), k));
      }
      const long long near = total - exact;
      if (exact == 0 && near == 0) continue;
      d << "\n      (when (and";
      for (long long i = 0; i < pegs; ++i) d << " (peg " << peg_names[i] << " " << color_names[secret[i]] << ")";
      d << ") (and";
      for (long long j = 1; j <= exact; ++j) d << " (exact " << count_names[j - 1] << ")";
      for (long long j = 1; j <= near; ++j) d << " (near " << count_names[j - 1] << ")";
      d << "))";
    }
    d << "))\n";
  }
  d << "  (:action clear\n    :parameters ()\n    :effect (and (ready)";
  for (const auto& j : count_names) d << " (not (exact " << j << ")) (not (near " << j << "))";
  d << "))\n"
    << "  (:action read-exact\n    :parameters (?j - count)\n    :observe (exact ?j))\n"
    << "  (:action read-near\n    :parameters (?j - count)\n    :observe (near ?j)))\n";

  std::ostringstream pr;
  pr << header(spec.family, p, spec.seed, encoding);
  pr << "(define (problem mastermind-" << pegs << "-" << colors << ")\n  (:domain mastermind)\n  (:init\n    (ready)\n";
  for (const auto& peg : peg_names) {
    pr << "    (oneof";
    for (const auto& c : color_names) pr << " (peg " << peg << " " << c << ")";
    pr << ")\n";
  }
  pr << "  )\n  (:goal (and (exact " << count_names.back() << "))))\n";
  return {d.str(), pr.str()};
}

GeneratedInstance diseases(const DomainSpec& spec) {
  Params p(spec.family, spec.params);
  const long long n = p.get("n", 2, 1, 30);
  p.finish();
  const std::string encoding =
      "Exactly one of n diseases (oneof). test ?d sets test-passed to whether the patient has ?d;\n"
      "observe-test-result senses it; treat ?d requires ?d and cures it.\n";
  std::vector<std::string> names;
  for (long long i = 1; i <= n; ++i) names.push_back("d" + std::to_string(i));

  std::ostringstream d;
  d << header(spec.family, p, spec.seed, encoding);
  d << "(define (domain diseases)\n  (:types disease)\n  (:predicates (disease ?d - disease) (test-passed))\n"
    << "  (:action test\n    :parameters (?d - disease)\n    :effect (and (when (disease ?d) (test-passed))\n"
    << "                 (when (not (disease ?d)) (not (test-passed)))))\n"
    << "  (:action treat\n    :parameters (?d - disease)\n    :precondition (and (disease ?d))\n"
    << "    :effect (and (not (disease ?d))))\n"
    << "  (:action observe-test-result\n    :parameters ()\n    :observe (test-passed)))\n";

  std::ostringstream pr;
  pr << header(spec.family, p, spec.seed, encoding);
  pr << "(define (problem diseases-" << n << ")\n  (:domain diseases)\n  (:objects " << join(names)
     << " - disease)\n  (:init\n    (not (test-passed))\n    (oneof";
  for (const auto& x : names) pr << " (disease " << x << ")";
  pr << ")\n  )\n  (:goal (and";
  for (const auto& x : names) pr << " (not (disease " << x << "))";
  pr << ")))\n";
  return {d.str(), pr.str()};
}

}  // namespace

const std::vector<std::string>& domain_families() {
  static const std::vector<std::string> f{"wumpus", "wumpus-deadend", "wumpus-restart", "doors",     "unix",
                                          "localize", "colorballs",   "rocksample",     "mastermind", "diseases"};
  return f;
}

GeneratedInstance generate(const DomainSpec& spec) {
  const auto& f = spec.family;
  if (f == "wumpus") return wumpus(spec, WumpusKind::Safe);
  if (f == "wumpus-deadend") return wumpus(spec, WumpusKind::DeadEnd);
  if (f == "wumpus-restart") return wumpus(spec, WumpusKind::Restart);
  if (f == "doors") return doors(spec);
  if (f == "unix") return unix_tree(spec);
  if (f == "localize") return localize(spec);
  if (f == "colorballs") return colorballs(spec);
  if (f == "rocksample") return rocksample(spec);
  if (f == "mastermind") return mastermind(spec);
  if (f == "diseases") return diseases(spec);
  throw InvalidParams("unknown domain family '" + f + "'");
}

std::map<std::string, long long> parse_params(const std::string& text) {
  auto trim = [](std::string v) {
    const auto b = v.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return v.substr(b, v.find_last_not_of(" \t") - b + 1);
  };
  std::map<std::string, long long> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(item.substr(0, eq));
    if (key.empty()) throw InvalidParams("malformed parameter '" + item + "', expected key=value");
    if (out.count(key)) throw InvalidParams("parameter '" + key + "' given twice");
    try {
      std::size_t used = 0;
      const std::string value = trim(item.substr(eq + 1));
      out[key] = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw InvalidParams("parameter '" + item + "' is not an integer");
    }
  }
  return out;
}

}  // namespace sdr
