#include "bandyn/ban.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bandyn {

char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

Sign sign_from_string(const std::string& s) {
  if (s == "+" || s == "plus" || s == "pos") return Sign::Plus;
  if (s == "-" || s == "minus" || s == "neg") return Sign::Minus;
  throw std::invalid_argument("sign: expected one of +, -, plus, minus");
}

NonMonotoneError::NonMonotoneError(int automaton_, int input_)
    : std::runtime_error("NON_MONOTONE(" + std::to_string(automaton_) + ", " +
                         std::to_string(input_) + ")"),
      automaton(automaton_),
      input(input_) {}

NetworkSpec make_bac(int n, Sign sign) {
  std::vector<Sign> signs(static_cast<std::size_t>(n), Sign::Plus);
  if (n >= 1 && sign == Sign::Minus) signs[0] = Sign::Minus;
  NetworkSpec net = make_bac_signs(signs);
  net.tag = sign == Sign::Plus ? NetworkTag::PosBac : NetworkTag::NegBac;
  return net;
}

NetworkSpec make_bac_signs(const std::vector<Sign>& signs) {
  const int n = static_cast<int>(signs.size());
  if (n < 1) throw std::invalid_argument("make_bac: n must be >= 1");
  if (n > kNetworkCap) throw CapExceededError("make_bac: cap exceeded");
  NetworkSpec net;
  net.n = n;
  net.tag = NetworkTag::Generic;
  net.left_len = n;
  for (int i = 0; i < n; ++i) {
    int pred = (i + n - 1) % n;
    net.locals.push_back(LocalCopy{pred, signs[static_cast<std::size_t>(i)]});
  }
  return net;
}

NetworkSpec make_bad(int l, int r, Sign sl, Sign sr, Gate gate) {
  if (l < 1 || r < 1) throw std::invalid_argument("make_bad: l, r must be >= 1");
  std::vector<Sign> left(static_cast<std::size_t>(l), Sign::Plus);
  std::vector<Sign> right(static_cast<std::size_t>(r), Sign::Plus);
  if (sl == Sign::Minus) left.back() = Sign::Minus;
  if (sr == Sign::Minus) right.back() = Sign::Minus;
  NetworkSpec net = make_bad_signs(left, right, gate);
  if (sl == Sign::Plus && sr == Sign::Plus)
    net.tag = NetworkTag::PosBad;
  else if (sl == Sign::Minus && sr == Sign::Minus)
    net.tag = NetworkTag::NegBad;
  else
    net.tag = NetworkTag::MixedBad;
  net.sign_left = sl;
  net.sign_right = sr;
  return net;
}

NetworkSpec make_bad_signs(const std::vector<Sign>& left,
                           const std::vector<Sign>& right, Gate gate) {
  const int l = static_cast<int>(left.size());
  const int r = static_cast<int>(right.size());
  if (l < 1 || r < 1) throw std::invalid_argument("make_bad: l, r must be >= 1");
  const int n = l + r - 1;
  if (n > kNetworkCap) throw CapExceededError("make_bad: cap exceeded");
  NetworkSpec net;
  net.n = n;
  net.tag = NetworkTag::Generic;
  net.left_len = l;
  net.right_len = r;
  net.gate = gate;
  // Arc k of the left cycle goes from automaton k to k+1 (mod l within
  // 0..l-1); arc k of the right cycle from the k-th automaton of the chain
  // 0, l, l+1, ..., n-1 back to 0.
  auto left_auto = [&](int k) { return k % l; };
  auto right_auto = [&](int k) {
    int m = k % r;
    return m == 0 ? 0 : l - 1 + m;
  };
  // Intersection automaton: two inputs through the last arc of each cycle.
  LocalGate g;
  g.gate = gate;
  g.pred_a = left_auto(l - 1);
  g.sign_a = left.back();
  g.pred_b = right_auto(r - 1);
  g.sign_b = right.back();
  net.locals.push_back(g);
  for (int k = 1; k < l; ++k)
    net.locals.push_back(
        LocalCopy{left_auto(k - 1), left[static_cast<std::size_t>(k - 1)]});
  for (int k = 1; k < r; ++k)
    net.locals.push_back(
        LocalCopy{right_auto(k - 1), right[static_cast<std::size_t>(k - 1)]});
  if (l == 1 || r == 1) {
    // Degenerate self-loop at the intersection: the gate above already
    // points at automaton 0 itself via left_auto / right_auto.
  }
  return net;
}

namespace {

void validate_table_monotone(const std::vector<std::vector<bool>>& tables) {
  const int n = static_cast<int>(tables.size());
  const std::uint64_t size = 1ull << n;
  for (int i = 0; i < n; ++i) {
    if (tables[static_cast<std::size_t>(i)].size() != size)
      throw std::invalid_argument("from_tables: table size must be 2^n");
    for (int j = 0; j < n; ++j) {
      bool up = false, down = false;
      for (std::uint64_t x = 0; x < size; ++x) {
        if ((x >> j) & 1) continue;
        bool lo = tables[static_cast<std::size_t>(i)][x];
        bool hi = tables[static_cast<std::size_t>(i)][x | (1ull << j)];
        if (lo < hi) up = true;
        if (lo > hi) down = true;
      }
      if (up && down) throw NonMonotoneError(i, j);
    }
  }
}

}  // namespace

NetworkSpec from_tables(const std::vector<std::vector<bool>>& tables) {
  const int n = static_cast<int>(tables.size());
  if (n < 1) throw std::invalid_argument("from_tables: empty network");
  if (n > kNetworkCap) throw CapExceededError("from_tables: cap exceeded");
  validate_table_monotone(tables);
  NetworkSpec net;
  net.n = n;
  for (const auto& t : tables) net.locals.push_back(LocalTable{t});
  return net;
}

int local_value(const NetworkSpec& net, int i, Config x) {
  const LocalFn& fn = net.locals[static_cast<std::size_t>(i)];
  if (const auto* c = std::get_if<LocalCopy>(&fn))
    return apply_sign(c->sign, (x >> c->pred) & 1);
  if (const auto* g = std::get_if<LocalGate>(&fn)) {
    int a = apply_sign(g->sign_a, (x >> g->pred_a) & 1);
    int b = apply_sign(g->sign_b, (x >> g->pred_b) & 1);
    return g->gate == Gate::Or ? (a | b) : (a & b);
  }
  return std::get<LocalTable>(fn).table[x] ? 1 : 0;
}

Config step(const NetworkSpec& net, Config x) {
  Config y = 0;
  for (int i = 0; i < net.n; ++i)
    y |= static_cast<Config>(local_value(net, i, x)) << i;
  return y;
}

SignedDigraph infer_structure(const NetworkSpec& net, int cap) {
  if (net.n > cap) throw CapExceededError("infer_structure: cap exceeded");
  SignedDigraph g;
  g.n = net.n;
  const std::uint64_t size = 1ull << net.n;
  for (int i = 0; i < net.n; ++i) {
    for (int j = 0; j < net.n; ++j) {
      bool up = false, down = false;
      for (std::uint64_t x = 0; x < size; ++x) {
        if ((x >> j) & 1) continue;
        int lo = local_value(net, i, static_cast<Config>(x));
        int hi = local_value(net, i, static_cast<Config>(x | (1ull << j)));
        if (lo < hi) up = true;
        if (lo > hi) down = true;
      }
      if (up && down) throw NonMonotoneError(i, j);
      if (up || down)
        g.arcs.push_back(SignedArc{j, i, up ? Sign::Plus : Sign::Minus});
    }
  }
  return g;
}

Int AttractorReport::attractor_total() const {
  Int acc = 0;
  for (const auto& [len, count] : period_attractors) acc += count;
  return acc;
}

AttractorReport attractor_census(const NetworkSpec& net,
                                 const CensusOptions& opts) {
  if (net.n > opts.cap) throw CapExceededError("attractor_census: cap exceeded");
  const std::uint64_t size = 1ull << net.n;
  std::vector<std::uint8_t> color(size, 0);  // 0 new, 1 on path, 2 done
  AttractorReport rep;
  std::vector<Config> path;
  for (std::uint64_t s = 0; s < size; ++s) {
    if (color[s] != 0) continue;
    path.clear();
    Config x = static_cast<Config>(s);
    while (color[x] == 0) {
      color[x] = 1;
      path.push_back(x);
      x = step(net, x);
    }
    if (color[x] == 1) {
      // The walk closed on the current path: everything from the first
      // occurrence of x onward is a new attractor.
      auto it = std::find(path.rbegin(), path.rend(), x);
      auto start = path.end() - 1 - (it - path.rbegin());
      std::uint64_t len = static_cast<std::uint64_t>(path.end() - start);
      rep.period_attractors[len] += 1;
      rep.recurrent_count += len;
      for (auto c = start; c != path.end(); ++c)
        rep.instability_histogram[local_instabilities(net, *c)]++;
      if (opts.store_orbits)
        rep.attractors.emplace_back(start, path.end());
    }
    for (Config c : path) color[c] = 2;
  }
  // omega = lcm of attractor periods, with an overflow guard for generic
  // networks whose cycle lengths are unconstrained.
  Int lcm = 1;
  for (const auto& [len, count] : rep.period_attractors)
    lcm = lcm / boost::multiprecision::gcd(lcm, Int(len)) * len;
  if (lcm > Int(std::uint64_t(1) << 62)) {
    rep.omega_valid = false;
    rep.omega = 0;
    return rep;
  }
  rep.omega = lcm.convert_to<std::uint64_t>();
  for (auto p : divisors(rep.omega)) {
    Int xp = 0;
    for (const auto& [len, count] : rep.period_attractors)
      if (p % len == 0) xp += Int(len) * count;
    rep.X[p] = xp;
  }
  for (auto p : divisors(rep.omega)) {
    Int xt = 0;
    for (auto q : divisors(p)) xt += Int(mobius(p / q)) * rep.X.at(q);
    rep.Xt[p] = xt;
    if (xt % p != 0)
      throw std::logic_error("attractor_census: inconsistent orbit counts");
    rep.At[p] = xt / p;
  }
  for (auto p : divisors(rep.omega)) {
    Int a = 0;
    for (auto q : divisors(p)) a += rep.At.at(q);
    rep.A[p] = a;
  }
  return rep;
}

CyclicWord orbit_word(const NetworkSpec& net, Config x, std::uint64_t horizon) {
  if (horizon < 1 || horizon > 63)
    throw std::invalid_argument("orbit_word: horizon must be in [1, 63]");
  std::uint64_t bits = 0;
  Config y = x;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    bits |= static_cast<std::uint64_t>(y & 1) << t;
    y = step(net, y);
  }
  if (y != x) throw std::invalid_argument("orbit_word: x is not recurrent");
  return CyclicWord(bits, static_cast<int>(horizon));
}

bool orbit_correspondence_check(const NetworkSpec& net, int cap) {
  if (!net.is_bad() || net.sign_left != Sign::Minus)
    throw std::invalid_argument("orbit_correspondence_check: needs a negative left cycle");
  if (net.n > cap) throw CapExceededError("orbit_correspondence_check: cap exceeded");
  const FamilyKind kind = net.sign_right == Sign::Minus ? FamilyKind::NegBad
                                                        : FamilyKind::MixedBad;
  AttractorReport rep = attractor_census(net, CensusOptions{cap, true});
  if (!rep.omega_valid) return false;
  const int l = net.left_len;
  for (auto p : divisors(rep.omega)) {
    const int d = static_cast<int>(l % p);
    if (d == 0) continue;
    const ForbiddenFamily fam{kind, d};
    // Counting direction: period-p recurrent configurations vs |W_d^p|.
    AdmissibleCensus words = enumerate_admissible(static_cast<int>(p), fam);
    if (rep.X.at(p) != Int(words.total)) return false;
    // Word direction: every orbit of a period dividing p traces an
    // admissible word of length p.  The AND gate is the bit-complement
    // conjugate of the OR gate, so its traces complement the OR-form
    // factor patterns.
    for (const auto& orbit : rep.attractors) {
      if (p % orbit.size() != 0) continue;
      CyclicWord w = orbit_word(net, orbit.front(), p);
      if (net.gate == Gate::And) w = CyclicWord(~w.bits & w.mask(), w.len);
      if (!is_admissible(w, fam)) return false;
    }
  }
  return true;
}

int local_instabilities(const NetworkSpec& net, Config x) {
  Config y = step(net, x);
  Config diff = (x ^ y) & ((net.n == 32 ? 0 : (Config(1) << net.n)) - 1);
  int count = 0;
  while (diff) {
    diff &= diff - 1;
    ++count;
  }
  return count;
}

std::string serialize(const NetworkSpec& net) {
  std::ostringstream out;
  for (int i = 0; i < net.n; ++i) {
    const LocalFn& fn = net.locals[static_cast<std::size_t>(i)];
    if (const auto* c = std::get_if<LocalCopy>(&fn)) {
      out << "copy " << c->pred << ' ' << sign_char(c->sign) << '\n';
    } else if (const auto* g = std::get_if<LocalGate>(&fn)) {
      out << "gate " << (g->gate == Gate::Or ? "OR" : "AND") << ' ' << g->pred_a
          << ' ' << sign_char(g->sign_a) << ' ' << g->pred_b << ' '
          << sign_char(g->sign_b) << '\n';
    } else {
      const auto& t = std::get<LocalTable>(fn).table;
      out << "table ";
      for (bool b : t) out << (b ? '1' : '0');
      out << '\n';
    }
  }
  return out.str();
}

NetworkSpec parse_network(std::istream& in) {
  struct Line {
    std::string kind;
    std::vector<std::string> args;
  };
  std::vector<Line> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    std::istringstream ls(raw);
    Line line;
    if (!(ls >> line.kind)) continue;  // blank line
    if (line.kind[0] == '#') continue;
    std::string tok;
    while (ls >> tok) line.args.push_back(tok);
    lines.push_back(std::move(line));
  }
  const int n = static_cast<int>(lines.size());
  if (n < 1) throw std::invalid_argument("parse_network: no automata");
  if (n > kNetworkCap) throw CapExceededError("parse_network: cap exceeded");
  NetworkSpec net;
  net.n = n;
  bool any_table = false;
  for (const auto& line : lines) {
    if (line.kind == "copy") {
      if (line.args.size() != 2)
        throw std::invalid_argument("parse_network: copy wants <pred> <sign>");
      int pred = std::stoi(line.args[0]);
      if (pred < 0 || pred >= n)
        throw std::invalid_argument("parse_network: predecessor out of range");
      net.locals.push_back(LocalCopy{pred, sign_from_string(line.args[1])});
    } else if (line.kind == "gate") {
      if (line.args.size() != 5)
        throw std::invalid_argument(
            "parse_network: gate wants <OR|AND> <p1> <s1> <p2> <s2>");
      LocalGate g;
      if (line.args[0] == "OR" || line.args[0] == "or")
        g.gate = Gate::Or;
      else if (line.args[0] == "AND" || line.args[0] == "and")
        g.gate = Gate::And;
      else
        throw std::invalid_argument("parse_network: unknown gate");
      g.pred_a = std::stoi(line.args[1]);
      g.sign_a = sign_from_string(line.args[2]);
      g.pred_b = std::stoi(line.args[3]);
      g.sign_b = sign_from_string(line.args[4]);
      if (g.pred_a < 0 || g.pred_a >= n || g.pred_b < 0 || g.pred_b >= n)
        throw std::invalid_argument("parse_network: predecessor out of range");
      net.locals.push_back(g);
    } else if (line.kind == "table") {
      if (line.args.size() != 1)
        throw std::invalid_argument("parse_network: table wants a bit string");
      const std::string& bits = line.args[0];
      if (bits.size() != (std::size_t{1} << n))
        throw std::invalid_argument("parse_network: table must have 2^n bits");
      LocalTable t;
      t.table.reserve(bits.size());
      for (char c : bits) {
        if (c != '0' && c != '1')
          throw std::invalid_argument("parse_network: table must be binary");
        t.table.push_back(c == '1');
      }
      any_table = true;
      net.locals.push_back(std::move(t));
    } else {
      throw std::invalid_argument("parse_network: unknown local kind '" +
                                  line.kind + "'");
    }
  }
  if (any_table) {
    // Table scans are the one ingestion path where monotony is not
    // guaranteed by construction.
    infer_structure(net);
  }
  return net;
}

NetworkSpec parse_network(const std::string& text) {
  std::istringstream in(text);
  return parse_network(in);
}

}  // namespace bandyn
