#include "treerep/group.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "treerep/error.hpp"

namespace treerep {

Automorphism Automorphism::identity(std::size_t n) {
  std::vector<Vertex> images(n);
  std::iota(images.begin(), images.end(), Vertex{0});
  return Automorphism(std::move(images));
}

Automorphism Automorphism::inverse() const {
  std::vector<Vertex> inv(images_.size());
  for (Vertex x = 0; x < images_.size(); ++x) inv[images_[x]] = x;
  return Automorphism(std::move(inv));
}

bool Automorphism::is_identity() const {
  for (Vertex x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

Automorphism operator*(const Automorphism& g, const Automorphism& h) {
  if (g.size() != h.size()) throw Error("composing automorphisms of different trees");
  std::vector<Vertex> images(h.size());
  for (Vertex x = 0; x < h.size(); ++x) images[x] = g.images_[h.images_[x]];
  return Automorphism(std::move(images));
}

Automorphism verify_automorphism(const Tree& tree, std::vector<Vertex> images) {
  const std::size_t n = tree.vertex_count();
  if (images.size() != n) {
    throw Error("automorphism has " + std::to_string(images.size()) + " images, tree has " + std::to_string(n) +
                " vertices");
  }
  std::vector<bool> hit(n, false);
  for (Vertex x = 0; x < n; ++x) {
    if (images[x] >= n) throw Error("image " + std::to_string(images[x]) + " out of range");
    if (hit[images[x]]) throw Error("not a permutation: " + std::to_string(images[x]) + " is hit twice");
    hit[images[x]] = true;
  }
  for (const Edge& e : tree.edges()) {
    const Vertex a = images[e.low];
    const Vertex b = images[e.high];
    if (!tree.adjacent(a, b)) {
      throw Error("edge {" + std::to_string(e.low) + "," + std::to_string(e.high) + "} maps to {" +
                  std::to_string(std::min(a, b)) + "," + std::to_string(std::max(a, b)) + "}, not an edge");
    }
  }
  return Automorphism(std::move(images));
}

GroupClosure close_group(const Tree& tree, const std::vector<Automorphism>& generators, std::size_t cap) {
  GroupClosure closure;
  const auto id = Automorphism::identity(tree.vertex_count());
  std::set<Automorphism> seen{id};
  closure.elements.push_back(id);
  for (const auto& g : generators) {
    if (g.size() != tree.vertex_count()) throw Error("generator does not act on this tree");
  }
  for (std::size_t head = 0; head < closure.elements.size(); ++head) {
    for (std::size_t k = 0; k < generators.size(); ++k) {
      Automorphism next = closure.elements[head] * generators[k];
      if (!seen.insert(next).second) continue;
      if (closure.elements.size() >= cap) return closure;
      closure.elements.push_back(std::move(next));
    }
  }
  // Generator positions within the element list.
  for (const auto& g : generators) {
    auto it = std::find(closure.elements.begin(), closure.elements.end(), g);
    closure.generator_indices.push_back(static_cast<std::size_t>(it - closure.elements.begin()));
  }
  closure.complete = true;
  return closure;
}

namespace {

// Search order and the isomorphism-class label of every vertex's subtree,
// rooted at the tree's center. Automorphisms fix the center setwise, so two
// vertices can only be exchanged when their labels agree.
struct SearchPlan {
  std::vector<Vertex> order;
  std::vector<Vertex> bfs_parent;  // meaningless for order[0]
  std::vector<int> label;
  std::vector<Vertex> root_candidates;
};

std::vector<Vertex> centers(const Tree& tree) {
  const std::size_t n = tree.vertex_count();
  if (n <= 2) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    return all;
  }
  std::vector<std::size_t> degree(n);
  std::vector<Vertex> layer;
  for (Vertex x = 0; x < n; ++x) {
    degree[x] = tree.degree(x);
    if (degree[x] == 1) layer.push_back(x);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<Vertex> next;
    for (Vertex leaf : layer)
      for (Vertex y : tree.neighbors(leaf))
        if (--degree[y] == 1) next.push_back(y);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

SearchPlan plan_search(const Tree& tree) {
  const std::size_t n = tree.vertex_count();
  const auto center = centers(tree);
  SearchPlan plan;
  const RootedTree rooted(tree, center[0]);
  plan.order.assign(rooted.bfs_order().begin(), rooted.bfs_order().end());
  plan.bfs_parent.assign(n, 0);
  for (Vertex x = 0; x < n; ++x)
    if (auto p = rooted.parent(x)) plan.bfs_parent[x] = *p;

  const bool bicentral = center.size() == 2;
  std::map<std::vector<int>, int> intern;
  plan.label.assign(n, 0);
  for (auto it = plan.order.rbegin(); it != plan.order.rend(); ++it) {
    const Vertex v = *it;
    std::vector<int> key;
    for (Vertex c : tree.neighbors(v)) {
      if (rooted.parent(c) != v) continue;
      // With two centers each half is labelled on its own.
      if (bicentral && v == center[0] && c == center[1]) continue;
      key.push_back(plan.label[c]);
    }
    std::sort(key.begin(), key.end());
    // Centers get a marker so no other vertex can share their label.
    key.push_back(v == center[0] || (bicentral && v == center[1]) ? -1 : -2);
    plan.label[v] = intern.try_emplace(std::move(key), static_cast<int>(intern.size())).first->second;
  }
  for (Vertex c : center)
    if (plan.label[c] == plan.label[center[0]]) plan.root_candidates.push_back(c);
  return plan;
}

// Depth-first enumeration; `choose` may reorder candidates. Returns false to stop.
template <typename Visit>
bool extend(const Tree& tree, const SearchPlan& plan, std::size_t position, std::vector<Vertex>& images,
            std::vector<bool>& used, Visit& visit, std::mt19937_64* rng) {
  if (position == plan.order.size()) return visit(images);
  const Vertex v = plan.order[position];
  std::vector<Vertex> candidates;
  if (position == 0) {
    candidates = plan.root_candidates;
  } else {
    for (Vertex w : tree.neighbors(images[plan.bfs_parent[v]]))
      if (!used[w] && plan.label[w] == plan.label[v]) candidates.push_back(w);
  }
  if (rng) std::shuffle(candidates.begin(), candidates.end(), *rng);
  for (Vertex w : candidates) {
    images[v] = w;
    used[w] = true;
    const bool keep_going = extend(tree, plan, position + 1, images, used, visit, rng);
    used[w] = false;
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

GroupClosure full_automorphism_group(const Tree& tree, std::size_t cap) {
  const SearchPlan plan = plan_search(tree);
  GroupClosure group;
  group.complete = true;
  std::vector<Vertex> images(tree.vertex_count());
  std::vector<bool> used(tree.vertex_count(), false);
  auto visit = [&](const std::vector<Vertex>& found) {
    if (group.elements.size() >= cap) {
      group.complete = false;
      return false;
    }
    group.elements.push_back(verify_automorphism(tree, found));
    return true;
  };
  extend(tree, plan, 0, images, used, visit, nullptr);
  // Lexicographic order puts the identity first.
  std::sort(group.elements.begin(), group.elements.end());
  group.generator_indices.resize(group.elements.size());
  std::iota(group.generator_indices.begin(), group.generator_indices.end(), std::size_t{0});
  return group;
}

std::vector<Automorphism> sample_automorphisms(const Tree& tree, std::size_t count, std::uint64_t seed) {
  const SearchPlan plan = plan_search(tree);
  std::mt19937_64 rng(seed);
  std::vector<Automorphism> samples;
  std::vector<Vertex> images(tree.vertex_count());
  std::vector<bool> used(tree.vertex_count(), false);
  while (samples.size() < count) {
    auto visit = [&](const std::vector<Vertex>& found) {
      samples.push_back(verify_automorphism(tree, found));
      return false;
    };
    std::fill(used.begin(), used.end(), false);
    extend(tree, plan, 0, images, used, visit, &rng);
  }
  return samples;
}

std::vector<Automorphism> parse_automorphisms(const Tree& tree, std::string_view text) {
  std::vector<Automorphism> result;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<Vertex> images;
    for (std::string tok; fields >> tok;) {
      Vertex x = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError(line_no, "malformed image `" + tok + "`");
      images.push_back(x);
    }
    if (images.empty()) continue;
    try {
      result.push_back(verify_automorphism(tree, std::move(images)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return result;
}

std::vector<Automorphism> load_automorphism_file(const Tree& tree, const std::string& file_name) {
  std::ifstream in(file_name);
  if (!in) throw Error("cannot open automorphism file `" + file_name + "`");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_automorphisms(tree, buffer.str());
}

VertexVector pi0(const Automorphism& g, const VertexVector& v) {
  VertexVector out;
  for (const auto& [x, c] : v) out.set(g(static_cast<Vertex>(x)), c);
  return out;
}

EdgeVector pi1(const Tree& tree, const Automorphism& g, const EdgeVector& w) {
  EdgeVector out;
  for (const auto& [e, c] : w) {
    const Edge& edge = tree.edge(static_cast<EdgeId>(e));
    const Vertex a = g(edge.low);
    const Vertex b = g(edge.high);
    out.set(*tree.edge_id(a, b), a < b ? c : -c);
  }
  return out;
}

VertexOperator op_pi0(const Tree& tree, const Automorphism& g) {
  const Automorphism inv = g.inverse();
  return {"pi0", tree.vertex_count(), tree.vertex_count(), [g](const VertexVector& v) { return pi0(g, v); },
          [inv](const VertexVector& v) { return pi0(inv, v); }};
}

LinearOperator<EdgeSpace, EdgeSpace> op_pi1(const Tree& tree, const Automorphism& g) {
  const Automorphism inv = g.inverse();
  return {"pi1", tree.edge_count(), tree.edge_count(), [tree, g](const EdgeVector& w) { return pi1(tree, g, w); },
          [tree, inv](const EdgeVector& w) { return pi1(tree, inv, w); }};
}

}  // namespace treerep
