#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "hcat/error.hpp"
#include "hcat/sset.hpp"

namespace hcat {

SimplexRef map_simplex(const SimplicialSet&, const SimplicialMap& f, const SimplexRef& x) {
  SimplexRef img = f.images.at(x.gen_dim).at(x.gen);
  for (auto it = x.degeneracies.rbegin(); it != x.degeneracies.rend(); ++it) img = degenerate(img, *it);
  return img;
}

void validate_map(const SimplicialSet& source, const SimplicialSet& target, const SimplicialMap& f) {
  for (int m = 0; m < static_cast<int>(f.images.size()); ++m) {
    for (std::size_t g = 0; g < f.images[m].size(); ++g) {
      const SimplexRef& img = f.images[m][g];
      if (img.dim() != m) throw ValidationError("map does not preserve dimension");
      const auto& faces = source.generator(m, static_cast<int>(g)).faces;
      for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
        if (target.face(img, i) != map_simplex(target, f, faces[i])) {
          throw ValidationError("map does not commute with d_" + std::to_string(i) + " on '" +
                                source.generator(m, static_cast<int>(g)).name + "'");
        }
      }
    }
  }
}

namespace {

class MapSearch {
 public:
  MapSearch(const SimplicialSet& source, const SimplicialSet& target, const MapSearchOptions& options)
      : source_(source), target_(target), options_(options) {
    const int cap = std::min(options.dim_cap, source.top_dim());
    current_.images.resize(std::max(cap + 1, 0));
    for (int m = 0; m <= cap; ++m) current_.images[m].resize(source.generator_count(m));
    plan_order(cap);
  }

  std::vector<SimplicialMap> run() {
    search(0);
    if (!options_.limit) {
      // Report in (dimension, id) order of the images, independent of the
      // order in which generators were assigned.
      std::map<SimplexRef, std::size_t> rank;
      auto rank_of = [&](const SimplexRef& s) {
        auto it = rank.find(s);
        if (it != rank.end()) return it->second;
        const auto level = target_.simplices(s.dim());
        for (std::size_t i = 0; i < level.size(); ++i) rank.emplace(level[i], i);
        return rank.at(s);
      };
      auto key = [&](const SimplicialMap& f) {
        std::vector<std::size_t> k;
        for (const auto& level : f.images) {
          for (const auto& img : level) k.push_back(rank_of(img));
        }
        return k;
      };
      std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keyed;
      for (std::size_t i = 0; i < found_.size(); ++i) keyed.emplace_back(key(found_[i]), i);
      std::sort(keyed.begin(), keyed.end());
      std::vector<SimplicialMap> sorted;
      sorted.reserve(found_.size());
      for (const auto& [k, i] : keyed) sorted.push_back(std::move(found_[i]));
      return sorted;
    }
    return std::move(found_);
  }

 private:
  using FaceTuple = std::vector<SimplexRef>;

  const std::vector<SimplexRef>& candidates(int m, const FaceTuple& faces) {
    auto& idx = index_[m];
    if (indexed_.insert(m).second) {
      for (const auto& s : target_.simplices(m)) {
        if (options_.isomorphisms_only && s.degenerate()) continue;
        FaceTuple key;
        for (int i = 0; m > 0 && i <= m; ++i) key.push_back(target_.face(s, i));
        idx[key].push_back(s);
      }
    }
    auto it = idx.find(faces);
    return it == idx.end() ? empty_ : it->second;
  }

  // Generators in (dimension, id) order, except that a generator is taken as
  // soon as all of its faces are, so higher simplices prune early.
  void plan_order(int cap) {
    std::vector<std::vector<char>> done(std::max(cap + 1, 0));
    for (int m = 0; m <= cap; ++m) done[m].assign(source_.generator_count(m), 0);
    auto ready = [&](int m, int g) {
      for (const auto& f : source_.generator(m, g).faces) {
        if (!done[f.gen_dim][f.gen]) return false;
      }
      return true;
    };
    auto take = [&](int m, int g) {
      done[m][g] = 1;
      order_.emplace_back(m, g);
    };
    for (int m = 0; m <= cap; ++m) {
      for (int g = 0; g < static_cast<int>(done[m].size()); ++g) {
        if (done[m][g]) continue;
        take(m, g);
        for (bool again = true; again;) {
          again = false;
          for (int h = m + 1; h <= cap && !again; ++h) {
            for (int k = 0; k < static_cast<int>(done[h].size()) && !again; ++k) {
              if (!done[h][k] && ready(h, k)) {
                take(h, k);
                again = true;
              }
            }
          }
        }
      }
    }
  }

  void search(std::size_t step) {
    if (options_.limit && found_.size() >= options_.limit) return;
    if (step == order_.size()) {
      found_.push_back(current_);
      return;
    }
    auto [m, g] = order_[step];
    FaceTuple required;
    for (const auto& face : source_.generator(m, g).faces) {
      required.push_back(map_simplex(target_, current_, face));
    }
    auto fixed = options_.fixed.find({m, g});
    for (const auto& cand : candidates(m, required)) {
      if (++nodes_ > options_.node_budget) {
        throw CapacityError("map search exceeded the node budget of " + std::to_string(options_.node_budget) +
                            " (" + std::to_string(found_.size()) + " maps found so far)");
      }
      if (fixed != options_.fixed.end() && fixed->second != cand) continue;
      if (options_.isomorphisms_only && used_.count(cand)) continue;
      current_.images[m][g] = cand;
      if (options_.isomorphisms_only) used_.insert(cand);
      search(step + 1);
      if (options_.isomorphisms_only) used_.erase(cand);
      if (options_.limit && found_.size() >= options_.limit) return;
    }
  }

  const SimplicialSet& source_;
  const SimplicialSet& target_;
  const MapSearchOptions& options_;
  std::vector<std::pair<int, int>> order_;
  std::map<int, std::map<FaceTuple, std::vector<SimplexRef>>> index_;
  std::set<int> indexed_;
  std::vector<SimplexRef> empty_;
  SimplicialMap current_;
  std::set<SimplexRef> used_;
  std::vector<SimplicialMap> found_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<SimplicialMap> enumerate_maps(const SimplicialSet& source, const SimplicialSet& target,
                                          const MapSearchOptions& options) {
  return MapSearch(source, target, options).run();
}

std::optional<SimplicialMap> is_isomorphic(const SimplicialSet& x, const SimplicialSet& y, int dim_cap,
                                           std::uint64_t node_budget) {
  for (int m = 0; m <= dim_cap; ++m) {
    if (x.generator_count(m) != y.generator_count(m)) return std::nullopt;
  }
  MapSearchOptions opts;
  opts.dim_cap = dim_cap;
  opts.node_budget = node_budget;
  opts.isomorphisms_only = true;
  opts.limit = 1;
  auto maps = enumerate_maps(x, y, opts);
  if (maps.empty()) return std::nullopt;
  return maps.front();
}

}  // namespace hcat
