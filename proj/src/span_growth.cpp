#include "algrowth/span_growth.hpp"

#include <map>

namespace algrowth {

SpanGrowth product_span_growth(const std::vector<BlockVector>& sigma, int n_max, int objects,
                               const BlockProduct& multiply, const Normalizer& normalize) {
  using Block = std::pair<int, int>;
  SpanGrowth out;
  out.at_object.assign(static_cast<std::size_t>(objects), {});
  std::map<Block, EchelonForm<Rational>> w;

  std::map<Block, EchelonForm<Rational>> layer;
  std::vector<BlockVector> normalized;
  for (const auto& s : sigma) {
    BlockVector n{s.src, s.tgt, normalize(s.v)};
    out.zero_generators.push_back(n.v.empty());
    layer[{s.src, s.tgt}].insert(n.v);
    normalized.push_back(std::move(n));
  }

  auto record = [&]() {
    Count total = 0;
    for (const auto& [block, form] : w) total += static_cast<Count>(form.rank());
    out.total.push_back(total);
    for (int o = 0; o < objects; ++o) {
      auto it = w.find({o, o});
      out.at_object[static_cast<std::size_t>(o)].push_back(it == w.end() ? 0 : static_cast<Count>(it->second.rank()));
    }
  };

  for (int l = 1; l <= n_max; ++l) {
    if (l > 1) {
      std::map<Block, EchelonForm<Rational>> next;
      for (const auto& [block, form] : layer) {
        for (const auto& row : form.rows()) {
          const BlockVector p{block.first, block.second, row};
          for (const auto& s : normalized) {
            if (s.src != p.tgt || s.v.empty()) continue;
            auto prod = normalize(multiply(p, s));
            if (!prod.empty()) next[{p.src, s.tgt}].insert(std::move(prod));
          }
        }
      }
      layer = std::move(next);
    }
    for (const auto& [block, form] : layer) {
      auto& target = w[block];
      for (const auto& row : form.rows()) target.insert(row);
    }
    record();
  }
  return out;
}

}  // namespace algrowth
