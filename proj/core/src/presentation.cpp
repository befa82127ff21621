#include "sba/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "sba/errors.hpp"

namespace sba {
namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum((unsigned char)c) || c == '_')) return false;
  return true;
}

std::vector<std::string> tokenize(std::string line) {
  // Pad the punctuation so "a:" and "1->2" split cleanly.
  std::string padded;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      padded += " -> ";
      ++i;
    } else if (line[i] == ':' || line[i] == '=') {
      padded += ' ';
      padded += line[i];
      padded += ' ';
    } else {
      padded += line[i];
    }
  }
  std::istringstream in(padded);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

[[noreturn]] void parse_fail(int lineno, const std::string& msg) {
  throw InputError("line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

int Presentation::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return (int)i;
  return -1;
}

int Presentation::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return (int)i;
  return -1;
}

bool Presentation::composable(const Path& p) const {
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (arrows[p[i]].dst != arrows[p[i + 1]].src) return false;
  return true;
}

std::string Presentation::path_name(const Path& p) const {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += arrows[p[i]].name;
  }
  return out;
}

std::vector<Path> Presentation::rho_plus() const {
  std::vector<Path> out = zero_relations;
  for (const auto& cr : comm_relations) {
    out.push_back(cr[0]);
    out.push_back(cr[1]);
  }
  return out;
}

int Presentation::in_degree(int vertex) const {
  int n = 0;
  for (const Arrow& a : arrows) n += (a.dst == vertex);
  return n;
}

int Presentation::out_degree(int vertex) const {
  int n = 0;
  for (const Arrow& a : arrows) n += (a.src == vertex);
  return n;
}

Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  auto parse_path = [&](const std::vector<std::string>& names, int ln) {
    Path path;
    for (const auto& n : names) {
      int a = p.arrow_index(n);
      if (a < 0) parse_fail(ln, "unknown arrow '" + n + "'");
      path.push_back(a);
    }
    if (!p.composable(path)) parse_fail(ln, "path " + p.path_name(path) + " is not composable");
    return path;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    std::vector<std::string> tok = tokenize(raw);
    if (tok.empty()) continue;
    const std::string& head = tok[0];
    if (head == "vertex") {
      if (tok.size() < 2) parse_fail(lineno, "vertex line needs at least one identifier");
      for (size_t i = 1; i < tok.size(); ++i) {
        if (!valid_ident(tok[i])) parse_fail(lineno, "bad vertex identifier '" + tok[i] + "'");
        if (p.vertex_index(tok[i]) >= 0) parse_fail(lineno, "duplicate vertex '" + tok[i] + "'");
        p.vertices.push_back(tok[i]);
      }
    } else if (head == "arrow") {
      if (tok.size() != 6 || tok[2] != ":" || tok[4] != "->")
        parse_fail(lineno, "expected 'arrow <id>: <src> -> <dst>'");
      if (!valid_ident(tok[1])) parse_fail(lineno, "bad arrow identifier '" + tok[1] + "'");
      if (p.arrow_index(tok[1]) >= 0) parse_fail(lineno, "duplicate arrow '" + tok[1] + "'");
      int s = p.vertex_index(tok[3]), t = p.vertex_index(tok[5]);
      if (s < 0) parse_fail(lineno, "unknown vertex '" + tok[3] + "'");
      if (t < 0) parse_fail(lineno, "unknown vertex '" + tok[5] + "'");
      p.arrows.push_back({tok[1], s, t});
    } else if (head == "zero") {
      if (tok.size() < 3) parse_fail(lineno, "zero relation needs at least two arrows");
      p.zero_relations.push_back(parse_path({tok.begin() + 1, tok.end()}, lineno));
    } else if (head == "comm") {
      auto eq = std::find(tok.begin(), tok.end(), "=");
      if (eq == tok.end()) parse_fail(lineno, "commutativity relation needs '='");
      std::vector<std::string> lhs(tok.begin() + 1, eq), rhs(eq + 1, tok.end());
      if (lhs.empty() || rhs.empty()) parse_fail(lineno, "empty side in commutativity relation");
      Path a = parse_path(lhs, lineno), b = parse_path(rhs, lineno);
      if (p.path_src(a) != p.path_src(b) || p.path_dst(a) != p.path_dst(b))
        parse_fail(lineno, "commutativity relation sides are not parallel");
      if (a == b) parse_fail(lineno, "commutativity relation sides are identical");
      p.comm_relations.push_back({a, b});
    } else {
      parse_fail(lineno, "unknown directive '" + head + "'");
    }
  }
  return p;
}

Presentation load_presentation(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw InputError("cannot open '" + file_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

std::string canonical_text(const Presentation& p) {
  std::ostringstream out;
  if (!p.vertices.empty()) {
    out << "vertex";
    for (const auto& v : p.vertices) out << ' ' << v;
    out << '\n';
  }
  for (const Arrow& a : p.arrows)
    out << "arrow " << a.name << ": " << p.vertices[a.src] << " -> " << p.vertices[a.dst] << '\n';
  for (const Path& z : p.zero_relations) out << "zero " << p.path_name(z) << '\n';
  for (const auto& cr : p.comm_relations)
    out << "comm " << p.path_name(cr[0]) << " = " << p.path_name(cr[1]) << '\n';
  return out.str();
}

namespace {

// Exact length-2 zero relations as (first, second) pairs.
std::set<std::pair<int, int>> zero_pairs(const Presentation& p) {
  std::set<std::pair<int, int>> out;
  for (const Path& z : p.zero_relations)
    if (z.size() == 2) out.insert({z[0], z[1]});
  return out;
}

std::set<std::pair<int, int>> rho_plus_pairs(const Presentation& p) {
  auto out = zero_pairs(p);
  for (const auto& cr : p.comm_relations)
    for (const Path& c : cr)
      if (c.size() == 2) out.insert({c[0], c[1]});
  return out;
}

CheckReport fail(std::string witness) { return {false, std::move(witness)}; }

// Sanity of commutativity components: each is long enough and contains no
// other relation as a factor, so it survives as a genuine basis class.
CheckReport check_comm_structure(const Presentation& p) {
  std::set<Path> zero_set(p.zero_relations.begin(), p.zero_relations.end());
  std::vector<Path> parts;
  for (const auto& cr : p.comm_relations) {
    parts.push_back(cr[0]);
    parts.push_back(cr[1]);
  }
  std::set<Path> part_set(parts.begin(), parts.end());
  if (part_set.size() != parts.size())
    return fail("two commutativity relations share a component");
  for (const Path& w : parts) {
    if (w.size() < 2)
      return fail("commutativity component " + p.path_name(w) + " is a single arrow");
    if (zero_set.count(w))
      return fail("commutativity component " + p.path_name(w) + " is also declared zero");
    for (size_t i = 0; i < w.size(); ++i)
      for (size_t len = 2; i + len <= w.size(); ++len) {
        if (len == w.size()) continue;  // proper factors only
        Path f(w.begin() + i, w.begin() + i + len);
        if (zero_set.count(f) || part_set.count(f))
          return fail("commutativity component " + p.path_name(w) +
                      " contains the relation " + p.path_name(f) + " as a factor");
      }
  }
  return {};
}

struct PathEnum {
  bool finite = true;
  std::string cycle_witness;
  std::vector<BasisPath> paths;  // plain relation-avoiding paths, unsorted
};

PathEnum enumerate_avoiding(const Presentation& p) {
  PathEnum result;
  std::set<Path> rho_plus_set;
  size_t max_len = 1;
  for (const Path& r : p.rho_plus()) {
    rho_plus_set.insert(r);
    max_len = std::max(max_len, r.size());
  }
  const size_t tail_cap = max_len - 1;

  // Any relation factor of a growing path ends at the freshly appended arrow,
  // so a tail of length max_len - 1 is all the memory the check needs.
  auto dies = [&](const Path& tail, int arrow) {
    Path probe = tail;
    probe.push_back(arrow);
    for (size_t len = 2; len <= probe.size(); ++len)
      if (rho_plus_set.count(Path(probe.end() - len, probe.end()))) return true;
    return false;
  };
  auto step_tail = [&](Path tail, int arrow) {
    tail.push_back(arrow);
    if (tail.size() > tail_cap) tail.erase(tail.begin(), tail.end() - tail_cap);
    return tail;
  };

  // Finiteness first: cycle search in the (vertex, tail) state graph.
  using State = std::pair<int, Path>;
  std::map<State, int> color;  // 1 on stack, 2 done
  std::vector<int> stack_arrows;
  auto dfs = [&](auto&& self, int vertex, const Path& tail) -> bool {
    State st{vertex, tail};
    color[st] = 1;
    for (int a = 0; a < (int)p.arrows.size(); ++a) {
      if (p.arrows[a].src != vertex || dies(tail, a)) continue;
      State nxt{p.arrows[a].dst, step_tail(tail, a)};
      auto it = color.find(nxt);
      if (it != color.end() && it->second == 1) {
        stack_arrows.push_back(a);
        return true;
      }
      if (it == color.end()) {
        stack_arrows.push_back(a);
        if (self(self, nxt.first, nxt.second)) return true;
        stack_arrows.pop_back();
      }
    }
    color[st] = 2;
    return false;
  };
  for (int v = 0; v < (int)p.vertices.size(); ++v) {
    if (color.count({v, {}})) continue;
    if (dfs(dfs, v, {})) {
      Path cyc(stack_arrows.begin(), stack_arrows.end());
      result.finite = false;
      result.cycle_witness = "relation-avoiding paths grow without bound; from vertex " +
                             p.vertices[v] + " the walk " + p.path_name(cyc) +
                             " can be extended forever";
      return result;
    }
  }

  // The state graph is acyclic, so plain enumeration terminates.
  constexpr size_t kBasisCap = 200000;
  auto grow = [&](auto&& self, int src, const Path& path) -> void {
    result.paths.push_back({src, path, -1});
    if (result.paths.size() > kBasisCap)
      throw ValidationError("relation-avoiding path count exceeds the supported bound");
    int endpoint = path.empty() ? src : p.arrows[path.back()].dst;
    Path tail = path;
    if (tail.size() > tail_cap) tail.erase(tail.begin(), tail.end() - tail_cap);
    for (int a = 0; a < (int)p.arrows.size(); ++a) {
      if (p.arrows[a].src != endpoint || dies(tail, a)) continue;
      Path ext = path;
      ext.push_back(a);
      self(self, src, ext);
    }
  };
  for (int v = 0; v < (int)p.vertices.size(); ++v) grow(grow, v, {});
  return result;
}

}  // namespace

CheckReport validate_special_biserial(const Presentation& p) {
  for (int v = 0; v < (int)p.vertices.size(); ++v) {
    std::vector<std::string> in, out;
    for (const Arrow& a : p.arrows) {
      if (a.src == v) out.push_back(a.name);
      if (a.dst == v) in.push_back(a.name);
    }
    auto join = [](const std::vector<std::string>& xs) {
      std::string s;
      for (size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + xs[i];
      return s;
    };
    if (out.size() > 2)
      return fail("vertex " + p.vertices[v] + " has " + std::to_string(out.size()) +
                  " outgoing arrows: " + join(out));
    if (in.size() > 2)
      return fail("vertex " + p.vertices[v] + " has " + std::to_string(in.size()) +
                  " incoming arrows: " + join(in));
  }

  auto zp = zero_pairs(p);
  for (int b = 0; b < (int)p.arrows.size(); ++b) {
    std::vector<std::string> continuations, predecessors;
    for (int g = 0; g < (int)p.arrows.size(); ++g) {
      if (p.arrows[g].src == p.arrows[b].dst && !zp.count({b, g}))
        continuations.push_back(p.arrows[g].name);
      if (p.arrows[g].dst == p.arrows[b].src && !zp.count({g, b}))
        predecessors.push_back(p.arrows[g].name);
    }
    auto join = [](const std::vector<std::string>& xs) {
      std::string s;
      for (size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + xs[i];
      return s;
    };
    if (continuations.size() > 1)
      return fail("arrow " + p.arrows[b].name + " has " + std::to_string(continuations.size()) +
                  " continuations with nonzero product: " + join(continuations));
    if (predecessors.size() > 1)
      return fail("arrow " + p.arrows[b].name + " has " + std::to_string(predecessors.size()) +
                  " predecessors with nonzero product: " + join(predecessors));
  }

  if (CheckReport r = check_comm_structure(p); !r.ok) return r;

  PathEnum pe = enumerate_avoiding(p);
  if (!pe.finite) return fail(pe.cycle_witness);
  return {};
}

CheckReport validate_gentle(const Presentation& p) {
  if (CheckReport r = validate_special_biserial(p); !r.ok) return r;
  if (!p.comm_relations.empty())
    return fail("commutativity relation " + p.path_name(p.comm_relations[0][0]) + " = " +
                p.path_name(p.comm_relations[0][1]) + " is present");
  for (const Path& z : p.zero_relations)
    if (z.size() != 2)
      return fail("zero relation " + p.path_name(z) + " has length " + std::to_string(z.size()));
  auto zp = zero_pairs(p);
  for (int b = 0; b < (int)p.arrows.size(); ++b) {
    std::vector<std::string> zero_continuations, zero_predecessors;
    for (int g = 0; g < (int)p.arrows.size(); ++g) {
      if (zp.count({b, g})) zero_continuations.push_back(p.arrows[g].name);
      if (zp.count({g, b})) zero_predecessors.push_back(p.arrows[g].name);
    }
    if (zero_continuations.size() > 1)
      return fail("arrow " + p.arrows[b].name + " starts two zero relations");
    if (zero_predecessors.size() > 1)
      return fail("arrow " + p.arrows[b].name + " ends two zero relations");
  }
  return {};
}

SignAssignment compute_signs(const Presentation& p) {
  const int n = (int)p.arrows.size();
  // Variables: 2a holds sigma(arrow a), 2a+1 holds eps(arrow a). Every
  // constraint forces two variables opposite, so the instance is a parity
  // 2-coloring; scanning variables in declaration order and seeding each new
  // component with +1 realizes the first assignment backtracking would find.
  std::vector<std::vector<std::pair<int, std::string>>> adj(2 * n);
  auto oppose = [&](int u, int v, const std::string& tag) {
    adj[u].emplace_back(v, tag);
    adj[v].emplace_back(u, tag);
  };

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (p.arrows[a].src == p.arrows[b].src)
        oppose(2 * a, 2 * b, "co-initial arrows " + p.arrows[a].name + ", " + p.arrows[b].name);
      if (p.arrows[a].dst == p.arrows[b].dst)
        oppose(2 * a + 1, 2 * b + 1,
               "co-terminal arrows " + p.arrows[a].name + ", " + p.arrows[b].name);
    }

  auto rp2 = rho_plus_pairs(p);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (p.arrows[a].dst != p.arrows[b].src) continue;
      int v = p.arrows[a].dst;
      bool in_rel = rp2.count({a, b}) != 0;
      bool lone_passage = p.in_degree(v) == 1 && p.out_degree(v) == 1;
      if (!in_rel || lone_passage)
        oppose(2 * a + 1, 2 * b,
               "composable arrows " + p.arrows[a].name + ", " + p.arrows[b].name);
    }

  std::vector<int> val(2 * n, 0);
  for (int start = 0; start < 2 * n; ++start) {
    if (val[start] != 0) continue;
    val[start] = 1;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto& [w, tag] : adj[u]) {
        int want = -val[u];
        if (val[w] == 0) {
          val[w] = want;
          q.push(w);
        } else if (val[w] != want) {
          throw ValidationError("no consistent sign assignment: constraint from " + tag +
                                " closes an odd cycle");
        }
      }
    }
  }

  SignAssignment s;
  s.sigma.resize(n);
  s.eps.resize(n);
  for (int a = 0; a < n; ++a) {
    s.sigma[a] = val[2 * a];
    s.eps[a] = val[2 * a + 1];
  }
  return s;
}

std::vector<BasisPath> enumerate_basis(const Presentation& p) {
  if (CheckReport r = check_comm_structure(p); !r.ok) throw ValidationError(r.witness);
  PathEnum pe = enumerate_avoiding(p);
  if (!pe.finite) throw ValidationError(pe.cycle_witness);

  std::vector<BasisPath> basis = std::move(pe.paths);
  for (int k = 0; k < (int)p.comm_relations.size(); ++k)
    basis.push_back({p.path_src(p.comm_relations[k][0]), p.comm_relations[k][0], k});

  std::sort(basis.begin(), basis.end(), [](const BasisPath& x, const BasisPath& y) {
    if (x.src != y.src) return x.src < y.src;
    if (x.merged() != y.merged()) return !x.merged();
    if (x.merged()) return x.comm_index < y.comm_index;
    if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
    return x.arrows < y.arrows;
  });
  return basis;
}

BasisIndex::BasisIndex(const Presentation& p, const std::vector<BasisPath>& basis) {
  merged_.assign(p.comm_relations.size(), -1);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].merged())
      merged_[basis[i].comm_index] = (int)i;
    else
      plain_[{basis[i].src, basis[i].arrows}] = (int)i;
  }

  std::set<Path> zero_set(p.zero_relations.begin(), p.zero_relations.end());
  std::map<Path, int> comm_of_path;
  for (int k = 0; k < (int)p.comm_relations.size(); ++k) {
    comm_of_path[p.comm_relations[k][0]] = k;
    comm_of_path[p.comm_relations[k][1]] = k;
  }

  end_vertex_.resize(basis.size());
  mult_.assign(basis.size(), std::vector<int>(p.arrows.size(), -1));
  for (size_t i = 0; i < basis.size(); ++i) {
    const BasisPath& u = basis[i];
    end_vertex_[i] =
        u.arrows.empty() ? u.src : p.arrows[u.arrows.back()].dst;
    if (u.merged()) continue;  // the merged class is annihilated by every arrow
    for (int a = 0; a < (int)p.arrows.size(); ++a) {
      if (p.arrows[a].src != end_vertex_[i]) continue;
      Path w = u.arrows;
      w.push_back(a);
      bool zero = false;
      for (size_t len = 2; len <= w.size() && !zero; ++len)
        if (zero_set.count(Path(w.end() - len, w.end()))) zero = true;
      if (zero) continue;
      if (auto it = comm_of_path.find(w); it != comm_of_path.end()) {
        mult_[i][a] = merged_[it->second];
        continue;
      }
      for (size_t len = 2; len < w.size() && !zero; ++len)
        if (comm_of_path.count(Path(w.end() - len, w.end()))) zero = true;
      if (zero) continue;
      int j = find_plain(u.src, w);
      if (j < 0) throw InternalError("path class basis is not closed under arrow action");
      mult_[i][a] = j;
    }
  }
}

int BasisIndex::find_plain(int src, const Path& arrows) const {
  auto it = plain_.find({src, arrows});
  return it == plain_.end() ? -1 : it->second;
}

int BasisIndex::find_merged(int comm_index) const { return merged_[comm_index]; }

}  // namespace sba
