#include "detgp/text.hpp"

#include <algorithm>
#include <cctype>

#include "detgp/error.hpp"

namespace detgp {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Vocabulary::Vocabulary() : tokens_{kUnkToken} { index_.emplace(kUnkToken, kUnk); }

Vocabulary::Vocabulary(std::vector<std::string> tokens_by_index) : tokens_(std::move(tokens_by_index)) {
  if (tokens_.empty() || tokens_[0] != kUnkToken) {
    throw InvalidArgument("vocabulary must reserve index 0 for " + std::string(kUnkToken));
  }
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw InvalidArgument("duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
}

int Vocabulary::index_of(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus, int min_count) {
  if (min_count < 1) throw InvalidArgument("min_count must be >= 1");
  std::map<std::string, long long> counts;  // ordered: lexicographic assignment for free
  for (const auto& doc : corpus) {
    for (const auto& tok : doc) ++counts[tok];
  }
  std::vector<std::string> tokens{Vocabulary::kUnkToken};
  for (const auto& [tok, count] : counts) {
    if (count >= min_count && tok != Vocabulary::kUnkToken) tokens.push_back(tok);
  }
  return Vocabulary(std::move(tokens));
}

TokenizedText index_tokens(const Vocabulary& vocab, const std::vector<std::string>& tokens) {
  TokenizedText out;
  out.indices.reserve(tokens.size());
  for (const auto& tok : tokens) out.indices.push_back(vocab.index_of(tok));
  return out;
}

Eigen::VectorXd encode_wavg(const EmbeddingTable& table, const TokenizedText& toks) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(table.dim());
  if (toks.indices.empty()) return sum;
  for (int idx : toks.indices) {
    if (idx < 0 || idx >= table.vocab_size()) {
      throw InvalidArgument("token index " + std::to_string(idx) + " out of range for table of " +
                            std::to_string(table.vocab_size()) + " rows");
    }
    sum += table.weights.row(idx);
  }
  return sum / static_cast<double>(toks.length());
}

RowGradMap encode_wavg_backward(const Eigen::VectorXd& grad_x, const TokenizedText& toks) {
  RowGradMap grads;
  accumulate_wavg_backward(grad_x, toks, grads);
  return grads;
}

void accumulate_wavg_backward(const Eigen::VectorXd& grad_x, const TokenizedText& toks,
                              RowGradMap& into) {
  if (toks.indices.empty()) return;
  const Eigen::VectorXd per_token = grad_x / static_cast<double>(toks.length());
  for (int idx : toks.indices) {
    auto [it, inserted] = into.try_emplace(idx, per_token);
    if (!inserted) it->second += per_token;
  }
}

}  // namespace detgp
