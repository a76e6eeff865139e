#include "bruhatspec/poset.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "bruhatspec/error.hpp"
#include "json.hpp"

namespace bruhatspec {

namespace {

void close_transitively(std::vector<char>& leq, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (leq[k * n + j]) leq[i * n + j] = 1;
    }
}

}  // namespace

LabeledPoset LabeledPoset::build(std::vector<std::string> labels, const std::vector<Edge>& relations) {
  const std::size_t n = labels.size();
  std::vector<char> leq(n * n, 0);
  for (auto [x, y] : relations) {
    if (x >= n || y >= n) throw InputError("relation refers to a missing element");
    leq[x * n + y] = 1;
  }
  return from_relation(std::move(labels), std::move(leq));
}

LabeledPoset LabeledPoset::from_relation(std::vector<std::string> labels, std::vector<char> leq) {
  const std::size_t n = labels.size();
  if (leq.size() != n * n) throw InputError("order relation has the wrong size");
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  close_transitively(leq, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        throw InputError("cycle detected: '" + labels[i] + "' and '" + labels[j] +
                         "' are mutually below each other");
  LabeledPoset p;
  p.labels_ = std::move(labels);
  p.leq_ = std::move(leq);
  p.derive_hasse();
  return p;
}

void LabeledPoset::derive_hasse() {
  const std::size_t n = size();
  hasse_.clear();
  down_.assign(n, {});
  up_.assign(n, {});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!less(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z)
        if (less(x, z) && less(z, y)) cover = false;
      if (cover) {
        hasse_.emplace_back(x, y);
        up_[x].push_back(y);
        down_[y].push_back(x);
      }
    }
}

std::vector<std::size_t> LabeledPoset::lower_covers(std::size_t x) const { return down_.at(x); }
std::vector<std::size_t> LabeledPoset::upper_covers(std::size_t x) const { return up_.at(x); }

bool LabeledPoset::covers(std::size_t lower, std::size_t upper) const {
  const auto& u = up_.at(lower);
  return std::find(u.begin(), u.end(), upper) != u.end();
}

LabeledPoset LabeledPoset::with_rank(std::vector<int> rank) const {
  if (rank.size() != size()) throw InputError("rank function has the wrong size");
  for (auto [x, y] : hasse_)
    if (rank[y] != rank[x] + 1)
      throw InputError("rank does not increase by one along the cover " + labels_[x] + " < " +
                       labels_[y]);
  LabeledPoset p = *this;
  p.rank_ = std::move(rank);
  return p;
}

LabeledPoset LabeledPoset::with_graded_rank() const {
  LabeledPoset p = *this;
  p.rank_ = graded_rank(*this);
  return p;
}

LabeledPoset LabeledPoset::with_tags(std::vector<std::string> tags) const {
  if (!tags.empty() && tags.size() != size()) throw InputError("tag list has the wrong size");
  LabeledPoset p = *this;
  p.tags_ = std::move(tags);
  return p;
}

std::optional<std::vector<int>> graded_rank(const LabeledPoset& p) {
  const std::size_t n = p.size();
  // Longest chain ending at x; elements are processed in an order compatible
  // with <, given by the number of elements below.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> below(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (p.leq(y, x)) ++below[x];
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  std::vector<int> depth(n, 0);
  for (std::size_t x : order)
    for (std::size_t d : p.lower_covers(x)) depth[x] = std::max(depth[x], depth[d] + 1);
  for (auto [x, y] : p.hasse())
    if (depth[y] != depth[x] + 1) return std::nullopt;
  return depth;
}

int height(const LabeledPoset& p) {
  auto r = p.rank() ? p.rank() : graded_rank(p);
  if (!r) throw InputError("height requires a graded poset");
  return r->empty() ? 0 : *std::max_element(r->begin(), r->end());
}

std::vector<int> rank_profile(const LabeledPoset& p) {
  auto r = p.rank() ? p.rank() : graded_rank(p);
  if (!r) throw InputError("rank profile requires a graded poset");
  std::vector<int> profile;
  for (int k : *r) {
    if (static_cast<int>(profile.size()) <= k) profile.resize(k + 1, 0);
    ++profile[k];
  }
  return profile;
}

LabeledPoset chain(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Edge> rel;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) rel.emplace_back(i - 1, i);
  }
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  return LabeledPoset::build(std::move(labels), rel).with_rank(std::move(rank));
}

LabeledPoset antichain(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return LabeledPoset::build(std::move(labels), {}).with_rank(std::vector<int>(n, 0));
}

LabeledPoset boolean_lattice(std::size_t atoms) {
  const std::size_t n = std::size_t{1} << atoms;
  std::vector<std::string> labels;
  std::vector<int> rank;
  std::vector<char> leq(n * n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    std::string label = "{";
    for (std::size_t a = 0; a < atoms; ++a)
      if (s >> a & 1) label += (label.size() > 1 ? "," : "") + std::to_string(a + 1);
    labels.push_back(label + "}");
    rank.push_back(std::popcount(s));
    for (std::size_t t = 0; t < n; ++t)
      if ((s & t) == s) leq[s * n + t] = 1;
  }
  return LabeledPoset::from_relation(std::move(labels), std::move(leq)).with_rank(std::move(rank));
}

LabeledPoset product(const LabeledPoset& p, const LabeledPoset& q) {
  const std::size_t np = p.size(), nq = q.size(), n = np * nq;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j) labels.push_back("(" + p.label(i) + "," + q.label(j) + ")");
  std::vector<char> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      leq[a * n + b] = p.leq(a / nq, b / nq) && q.leq(a % nq, b % nq);
  auto out = LabeledPoset::from_relation(std::move(labels), std::move(leq));
  if (p.rank() && q.rank()) {
    std::vector<int> rank(n);
    for (std::size_t a = 0; a < n; ++a) rank[a] = (*p.rank())[a / nq] + (*q.rank())[a % nq];
    out = out.with_rank(std::move(rank));
  }
  return out;
}

LabeledPoset disjoint_union(const LabeledPoset& p, const LabeledPoset& q) {
  const std::size_t np = p.size(), n = np + q.size();
  std::vector<std::string> labels = p.labels();
  labels.insert(labels.end(), q.labels().begin(), q.labels().end());
  std::vector<char> leq(n * n, 0);
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < np; ++b) leq[a * n + b] = p.leq(a, b);
  for (std::size_t a = np; a < n; ++a)
    for (std::size_t b = np; b < n; ++b) leq[a * n + b] = q.leq(a - np, b - np);
  auto out = LabeledPoset::from_relation(std::move(labels), std::move(leq));
  if (p.rank() && q.rank()) {
    std::vector<int> rank = *p.rank();
    rank.insert(rank.end(), q.rank()->begin(), q.rank()->end());
    out = out.with_rank(std::move(rank));
  }
  return out;
}

LabeledPoset subposet(const LabeledPoset& p, const std::vector<std::size_t>& elements) {
  const std::size_t n = elements.size();
  std::vector<std::string> labels;
  std::vector<char> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(p.label(elements[a]));
    for (std::size_t b = 0; b < n; ++b) leq[a * n + b] = p.leq(elements[a], elements[b]);
  }
  return LabeledPoset::from_relation(std::move(labels), std::move(leq));
}

bool is_upper_set(const LabeledPoset& p, const std::vector<std::size_t>& subset) {
  std::vector<char> in(p.size(), 0);
  for (auto x : subset) in.at(x) = 1;
  for (auto x : subset)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(x, y) && !in[y]) return false;
  return true;
}

bool is_lower_set(const LabeledPoset& p, const std::vector<std::size_t>& subset) {
  std::vector<char> in(p.size(), 0);
  for (auto x : subset) in.at(x) = 1;
  for (auto x : subset)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(y, x) && !in[y]) return false;
  return true;
}

std::vector<std::size_t> upper_set_generated_by(const LabeledPoset& p,
                                                const std::vector<std::size_t>& generators) {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < p.size(); ++y)
    for (auto g : generators)
      if (p.leq(g, y)) {
        out.push_back(y);
        break;
      }
  return out;
}

// ---------------------------------------------------------------------------

PosetMap::PosetMap(const LabeledPoset& source, const LabeledPoset& target,
                   std::vector<std::size_t> assignment)
    : assignment_(std::move(assignment)), target_size_(target.size()) {
  if (assignment_.size() != source.size()) throw InputError("poset map does not cover its source");
  std::vector<int> hits(target.size(), 0);
  for (auto y : assignment_) {
    if (y >= target.size()) throw InputError("poset map leaves its target");
    ++hits[y];
  }
  injective_ = std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
  surjective_ = std::all_of(hits.begin(), hits.end(), [](int h) { return h >= 1; });
  order_preserving_ = true;
  bool reflecting = true;
  const std::size_t n = source.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const bool s = source.leq(a, b);
      const bool t = target.leq(assignment_[a], assignment_[b]);
      if (s && !t) order_preserving_ = false;
      if (t && !s) reflecting = false;
    }
  is_isomorphism_ = injective_ && surjective_ && order_preserving_ && reflecting;
}

std::vector<std::size_t> PosetMap::inverse() const {
  if (!bijective()) throw Error("inverse of a non-bijective poset map");
  std::vector<std::size_t> inv(assignment_.size());
  for (std::size_t x = 0; x < assignment_.size(); ++x) inv[assignment_[x]] = x;
  return inv;
}

namespace {

// Iterated neighbourhood refinement of an initial colouring over the joint
// element set of both posets, so colours are comparable across them.
std::vector<std::size_t> refine_colours(const LabeledPoset& p, const LabeledPoset& q,
                                        std::vector<std::size_t> colour) {
  const std::size_t np = p.size(), n = np + q.size();
  auto covers_of = [&](std::size_t x, bool down) {
    std::vector<std::size_t> c;
    const auto& poset = x < np ? p : q;
    const std::size_t off = x < np ? 0 : np;
    for (auto y : down ? poset.lower_covers(x - off) : poset.upper_covers(x - off))
      c.push_back(colour[y + off]);
    std::sort(c.begin(), c.end());
    return c;
  };
  std::size_t classes = std::set<std::size_t>(colour.begin(), colour.end()).size();
  for (;;) {
    using Key = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
    std::map<Key, std::size_t> ids;
    std::vector<Key> keys(n);
    for (std::size_t x = 0; x < n; ++x) keys[x] = Key{colour[x], covers_of(x, true), covers_of(x, false)};
    for (const auto& k : keys) ids.emplace(k, 0);
    std::size_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (std::size_t x = 0; x < n; ++x) colour[x] = ids.at(keys[x]);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return colour;
}

std::vector<int> longest_below(const LabeledPoset& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> below(p.size(), 0);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) below[x] += p.leq(y, x);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return below[a] < below[b]; });
  std::vector<int> depth(p.size(), 0);
  for (auto x : order)
    for (auto d : p.lower_covers(x)) depth[x] = std::max(depth[x], depth[d] + 1);
  return depth;
}

}  // namespace

std::optional<PosetMap> find_isomorphism(const LabeledPoset& p, const LabeledPoset& q,
                                         const std::vector<BlockConstraint>& constraints) {
  const std::size_t n = p.size();
  if (q.size() != n || p.hasse().size() != q.hasse().size()) return std::nullopt;

  std::vector<int> block_p(n, -1), block_q(n, -1);
  for (std::size_t b = 0; b < constraints.size(); ++b) {
    const auto& c = constraints[b];
    if (c.in_source.size() != c.in_target.size()) return std::nullopt;
    for (auto x : c.in_source) {
      if (block_p.at(x) != -1) throw InputError("constraint blocks overlap in the source poset");
      block_p[x] = static_cast<int>(b);
    }
    for (auto y : c.in_target) {
      if (block_q.at(y) != -1) throw InputError("constraint blocks overlap in the target poset");
      block_q[y] = static_cast<int>(b);
    }
  }

  // Initial colour: block, depth, counts below/above.
  const auto depth_p = longest_below(p), depth_q = longest_below(q);
  using Sig = std::tuple<int, int, std::size_t, std::size_t>;
  std::map<Sig, std::size_t> sig_ids;
  std::vector<Sig> sigs(2 * n);
  for (std::size_t x = 0; x < 2 * n; ++x) {
    const bool in_p = x < n;
    const auto& poset = in_p ? p : q;
    const std::size_t e = in_p ? x : x - n;
    std::size_t below = 0, above = 0;
    for (std::size_t y = 0; y < n; ++y) {
      below += poset.leq(y, e);
      above += poset.leq(e, y);
    }
    sigs[x] = Sig{in_p ? block_p[e] : block_q[e], in_p ? depth_p[e] : depth_q[e], below, above};
    sig_ids.emplace(sigs[x], 0);
  }
  std::size_t next = 0;
  for (auto& [s, id] : sig_ids) id = next++;
  std::vector<std::size_t> colour(2 * n);
  for (std::size_t x = 0; x < 2 * n; ++x) colour[x] = sig_ids.at(sigs[x]);
  colour = refine_colours(p, q, std::move(colour));

  {
    std::vector<std::size_t> cp(colour.begin(), colour.begin() + n), cq(colour.begin() + n, colour.end());
    std::sort(cp.begin(), cp.end());
    std::sort(cq.begin(), cq.end());
    if (cp != cq) return std::nullopt;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return depth_p[a] < depth_p[b]; });

  std::vector<std::vector<std::size_t>> candidates(n);
  std::vector<std::size_t> by_label(n);
  std::iota(by_label.begin(), by_label.end(), 0);
  std::stable_sort(by_label.begin(), by_label.end(),
                   [&](auto a, auto b) { return q.label(a) < q.label(b); });
  for (std::size_t x = 0; x < n; ++x)
    for (auto y : by_label)
      if (colour[x] == colour[n + y]) candidates[x].push_back(y);

  std::vector<std::size_t> assign(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t k) {
    if (k == n) return true;
    const std::size_t x = order[k];
    for (auto y : candidates[x]) {
      if (used[y]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        const std::size_t x2 = order[i], y2 = assign[x2];
        ok = p.leq(x2, x) == q.leq(y2, y) && p.leq(x, x2) == q.leq(y, y2);
      }
      if (!ok) continue;
      assign[x] = y;
      used[y] = 1;
      if (extend(k + 1)) return true;
      used[y] = 0;
      assign[x] = n;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return PosetMap(p, q, assign);
}

PosetPushout pushout(const LabeledPoset& a, const LabeledPoset& b, const LabeledPoset& c,
                     const std::vector<std::size_t>& f_to_b, const std::vector<std::size_t>& g_to_c) {
  if (f_to_b.size() != a.size() || g_to_c.size() != a.size())
    throw InputError("pushout maps must be defined on all of A");
  const std::size_t nb = b.size(), n = nb + c.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t e = 0; e < a.size(); ++e) {
    auto r1 = find(f_to_b[e]), r2 = find(nb + g_to_c[e]);
    if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
  }
  std::map<std::size_t, std::size_t> class_of_root;
  for (std::size_t x = 0; x < n; ++x) class_of_root.emplace(find(x), 0);
  std::size_t k = 0;
  for (auto& [root, id] : class_of_root) id = k++;
  std::vector<std::size_t> cls(n);
  for (std::size_t x = 0; x < n; ++x) cls[x] = class_of_root.at(find(x));

  // Preorder on classes, then collapse its cycles.
  std::vector<char> pre(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) pre[i * k + i] = 1;
  for (std::size_t x = 0; x < nb; ++x)
    for (std::size_t y = 0; y < nb; ++y)
      if (b.leq(x, y)) pre[cls[x] * k + cls[y]] = 1;
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y)
      if (c.leq(x, y)) pre[cls[nb + x] * k + cls[nb + y]] = 1;
  close_transitively(pre, k);
  std::vector<std::size_t> collapsed(k, k);
  std::size_t m = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (collapsed[i] != k) continue;
    collapsed[i] = m;
    for (std::size_t j = i + 1; j < k; ++j)
      if (pre[i * k + j] && pre[j * k + i]) collapsed[j] = m;
    ++m;
  }
  std::vector<std::string> labels(m);
  for (std::size_t x = n; x-- > 0;) {
    const auto t = collapsed[cls[x]];
    labels[t] = x < nb ? b.label(x) : c.label(x - nb);
  }
  std::vector<char> leq(m * m, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (pre[i * k + j]) leq[collapsed[i] * m + collapsed[j]] = 1;
  PosetPushout out;
  out.poset = LabeledPoset::from_relation(std::move(labels), std::move(leq));
  for (std::size_t x = 0; x < nb; ++x) out.from_b.push_back(collapsed[cls[x]]);
  for (std::size_t x = 0; x < c.size(); ++x) out.from_c.push_back(collapsed[cls[nb + x]]);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string export_poset(const LabeledPoset& p, ExportFormat format) {
  const auto rank = p.rank() ? p.rank() : graded_rank(p);
  if (format == ExportFormat::Json) {
    nlohmann::ordered_json j;
    j["elements"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
      nlohmann::ordered_json e;
      e["id"] = i;
      e["label"] = p.label(i);
      if (rank)
        e["rank"] = (*rank)[i];
      else
        e["rank"] = nullptr;
      if (!p.tags().empty()) e["tag"] = p.tags()[i];
      j["elements"].push_back(std::move(e));
    }
    j["hasse"] = nlohmann::ordered_json::array();
    for (auto [x, y] : p.hasse()) j["hasse"].push_back({x, y});
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  auto node_line = [&](std::size_t i) {
    os << "n" << i << " [label=" << dot_quote(p.label(i));
    if (!p.tags().empty()) os << ", xlabel=" << dot_quote(p.tags()[i]);
    os << "];";
  };
  if (rank) {
    const int top = rank->empty() ? -1 : *std::max_element(rank->begin(), rank->end());
    for (int r = 0; r <= top; ++r) {
      os << "  { rank=same;";
      for (std::size_t i = 0; i < p.size(); ++i)
        if ((*rank)[i] == r) {
          os << " ";
          node_line(i);
        }
      os << " }\n";
    }
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) {
      os << "  ";
      node_line(i);
      os << "\n";
    }
  }
  for (auto [x, y] : p.hasse()) os << "  n" << x << " -> n" << y << ";\n";
  os << "}\n";
  return os.str();
}

ExportFormat parse_export_format(const std::string& name) {
  if (name == "dot") return ExportFormat::Dot;
  if (name == "json") return ExportFormat::Json;
  throw InputError("unknown export format '" + name + "' (expected dot or json)");
}

}  // namespace bruhatspec
