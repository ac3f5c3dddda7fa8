#include "treerep/tree.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include "treerep/error.hpp"

namespace treerep {

namespace {

// Union-find used only for cycle detection while parsing.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<Vertex> bfs_parents(const Tree& tree, Vertex source, Vertex none) {
  std::vector<Vertex> parent(tree.vertex_count(), none);
  std::vector<bool> seen(tree.vertex_count(), false);
  std::queue<Vertex> queue;
  queue.push(source);
  seen[source] = true;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop();
    for (Vertex y : tree.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = x;
        queue.push(y);
      }
    }
  }
  return parent;
}

void require_vertex(const Tree& tree, Vertex x) {
  if (!tree.contains(x)) {
    throw Error("vertex " + std::to_string(x) + " out of range (tree has " +
                std::to_string(tree.vertex_count()) + " vertices)");
  }
}

}  // namespace

Tree::Tree(std::size_t vertex_count, std::vector<std::pair<Vertex, Vertex>> edges) {
  if (vertex_count == 0) throw Error("a tree needs at least one vertex");
  if (edges.size() != vertex_count - 1) {
    throw Error("a tree on " + std::to_string(vertex_count) + " vertices needs " +
                std::to_string(vertex_count - 1) + " edges, got " + std::to_string(edges.size()));
  }
  auto data = std::make_shared<Data>();
  data->adjacency.resize(vertex_count);
  DisjointSets components(vertex_count);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw Error("edge " + std::to_string(u) + "-" + std::to_string(v) + " has an id out of range");
    }
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    if (!components.unite(u, v)) {
      throw Error("cycle detected at edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    data->adjacency[u].push_back(v);
    data->adjacency[v].push_back(u);
    data->edges.push_back({std::min(u, v), std::max(u, v)});
  }
  // N-1 edges without a cycle already force connectivity.
  for (auto& list : data->adjacency) std::sort(list.begin(), list.end());
  std::sort(data->edges.begin(), data->edges.end());
  data_ = std::move(data);
}

bool Tree::adjacent(Vertex x, Vertex y) const {
  if (!contains(x) || !contains(y)) return false;
  const auto n = neighbors(x);
  return std::binary_search(n.begin(), n.end(), y);
}

std::optional<EdgeId> Tree::edge_id(Vertex x, Vertex y) const {
  const Edge key{std::min(x, y), std::max(x, y)};
  const auto& list = data_->edges;
  auto it = std::lower_bound(list.begin(), list.end(), key);
  if (it == list.end() || *it != key) return std::nullopt;
  return static_cast<EdgeId>(it - list.begin());
}

RootedTree::RootedTree(Tree tree, Vertex origin) : tree_(std::move(tree)), origin_(origin) {
  require_vertex(tree_, origin);
  const std::size_t n = tree_.vertex_count();
  auto data = std::make_shared<Data>();
  data->parent.assign(n, kNoParent);
  data->depth.assign(n, 0);
  data->order.reserve(n);
  std::vector<bool> seen(n, false);
  std::queue<Vertex> queue;
  queue.push(origin);
  seen[origin] = true;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop();
    data->order.push_back(x);
    for (Vertex y : tree_.neighbors(x)) {
      if (seen[y]) continue;
      seen[y] = true;
      data->parent[y] = x;
      data->depth[y] = data->depth[x] + 1;
      data->max_depth = std::max(data->max_depth, data->depth[y]);
      queue.push(y);
    }
  }
  data_ = std::move(data);
}

std::optional<Vertex> RootedTree::parent(Vertex x) const {
  const Vertex p = data_->parent.at(x);
  if (p == kNoParent) return std::nullopt;
  return p;
}

RootedTree root_at(const Tree& tree, Vertex origin) { return RootedTree(tree, origin); }

std::vector<Vertex> path(const Tree& tree, Vertex x, Vertex y) {
  require_vertex(tree, x);
  require_vertex(tree, y);
  constexpr Vertex kNone = static_cast<Vertex>(-1);
  // Parents toward y; walking from x then reads the geodesic in order.
  const auto parent = bfs_parents(tree, y, kNone);
  std::vector<Vertex> result{x};
  for (Vertex v = x; v != y; v = parent[v]) result.push_back(parent[v]);
  return result;
}

std::size_t distance(const Tree& tree, Vertex x, Vertex y) { return path(tree, x, y).size() - 1; }

std::vector<std::size_t> distance_table(const Tree& tree) {
  const std::size_t n = tree.vertex_count();
  std::vector<std::size_t> table(n * n, 0);
  for (Vertex source = 0; source < n; ++source) {
    const RootedTree rooted(tree, source);
    for (Vertex x = 0; x < n; ++x) table[source * n + x] = rooted.depth(x);
  }
  return table;
}

Tree parse_tree(std::string_view text) {
  std::optional<std::size_t> vertex_count;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::size_t> edge_lines;
  std::size_t line_no = 0;
  std::size_t last_line = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    last_line = line_no;

    if (!vertex_count) {
      if (tokens.size() != 2 || tokens[0] != "tree" || tokens[1].rfind("v=", 0) != 0) {
        throw ParseError(line_no, "expected header `tree v=N`");
      }
      std::size_t n = 0;
      const auto& num = tokens[1];
      auto [ptr, ec] = std::from_chars(num.data() + 2, num.data() + num.size(), n);
      if (ec != std::errc() || ptr != num.data() + num.size() || n == 0) {
        throw ParseError(line_no, "invalid vertex count `" + num + "`");
      }
      vertex_count = n;
      continue;
    }

    if (tokens.size() != 2) throw ParseError(line_no, "malformed edge line, expected `u v`");
    Vertex ends[2];
    for (int i = 0; i < 2; ++i) {
      const auto& tok = tokens[i];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), ends[i]);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "malformed vertex id `" + tok + "`");
      }
      if (ends[i] >= *vertex_count) {
        throw ParseError(line_no, "id out of range: " + tok + " >= " + std::to_string(*vertex_count));
      }
    }
    if (ends[0] == ends[1]) throw ParseError(line_no, "self-loop at vertex " + tokens[0]);
    edges.emplace_back(ends[0], ends[1]);
    edge_lines.push_back(line_no);
  }

  if (!vertex_count) throw ParseError(line_no == 0 ? 1 : line_no, "missing header `tree v=N`");

  // Cycle detection first so the message can point at the closing edge.
  DisjointSets components(*vertex_count);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!components.unite(edges[i].first, edges[i].second)) {
      throw ParseError(edge_lines[i], "cycle detected at edge " + std::to_string(edges[i].first) + " " +
                                          std::to_string(edges[i].second));
    }
  }
  if (edges.size() != *vertex_count - 1) {
    throw ParseError(last_line, "disconnected graph: " + std::to_string(edges.size()) + " edges for " +
                                    std::to_string(*vertex_count) + " vertices");
  }
  return Tree(*vertex_count, std::move(edges));
}

std::string serialize_tree(const Tree& tree) {
  std::ostringstream out;
  out << "tree v=" << tree.vertex_count() << '\n';
  for (const Edge& e : tree.edges()) out << e.low << ' ' << e.high << '\n';
  return out.str();
}

Tree load_tree_file(const std::string& file_name) {
  std::ifstream in(file_name);
  if (!in) throw Error("cannot open tree file `" + file_name + "`");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tree(buffer.str());
}

namespace generators {

Tree path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Tree(n, std::move(edges));
}

Tree star(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Tree(n, std::move(edges));
}

Tree regular(std::size_t q, std::size_t radius) {
  if (q == 0) throw Error("regular tree needs q >= 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> frontier{0};
  Vertex next = 1;
  for (std::size_t level = 0; level < radius; ++level) {
    std::vector<Vertex> grown;
    for (Vertex x : frontier) {
      // The center has q+1 children; everything else q (its parent is the extra neighbour).
      const std::size_t children = level == 0 ? q + 1 : q;
      for (std::size_t c = 0; c < children; ++c) {
        edges.emplace_back(x, next);
        grown.push_back(next++);
      }
    }
    frontier = std::move(grown);
  }
  return Tree(next, std::move(edges));
}

Tree random(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error("random tree needs n >= 1");
  if (n <= 2) return path(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = pick(rng);

  std::vector<std::size_t> degree(n, 1);
  for (Vertex c : code) ++degree[c];
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n - 1);
  // Linear-time Pruefer decoding.
  Vertex ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  Vertex leaf = ptr;
  for (Vertex c : code) {
    edges.emplace_back(leaf, c);
    --degree[leaf];
    if (--degree[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, static_cast<Vertex>(n - 1));
  return Tree(n, std::move(edges));
}

}  // namespace generators

namespace {

std::vector<std::uint64_t> parse_numbers(const std::string& spec, std::string_view args, std::size_t expected) {
  std::vector<std::uint64_t> values;
  std::size_t start = 0;
  while (start <= args.size()) {
    const std::size_t comma = std::min(args.find(',', start), args.size());
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(args.data() + start, args.data() + comma, value);
    if (ec != std::errc() || ptr != args.data() + comma) throw Error("malformed tree spec `" + spec + "`");
    values.push_back(value);
    start = comma + 1;
  }
  if (values.size() != expected) throw Error("malformed tree spec `" + spec + "`");
  return values;
}

}  // namespace

Tree tree_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string family = spec.substr(0, colon);
    const std::string_view args = std::string_view(spec).substr(colon + 1);
    if (family == "path") return generators::path(parse_numbers(spec, args, 1)[0]);
    if (family == "star") return generators::star(parse_numbers(spec, args, 1)[0]);
    if (family == "regular") {
      const auto v = parse_numbers(spec, args, 2);
      return generators::regular(v[0], v[1]);
    }
    if (family == "random") {
      const auto v = parse_numbers(spec, args, 2);
      return generators::random(v[0], v[1]);
    }
  }
  return load_tree_file(spec);
}

}  // namespace treerep
