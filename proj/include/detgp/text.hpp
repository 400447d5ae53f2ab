#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace detgp {

// Lowercases and splits on any non-alphanumeric byte; drops empty pieces.
std::vector<std::string> tokenize(std::string_view text);

// Token -> index map with UNK reserved at 0. Construction is deterministic:
// qualifying tokens get indices in lexicographic order.
class Vocabulary {
 public:
  static constexpr int kUnk = 0;
  static constexpr const char* kUnkToken = "<unk>";

  Vocabulary();
  explicit Vocabulary(std::vector<std::string> tokens_by_index);  // checkpoint load

  int size() const { return static_cast<int>(tokens_.size()); }
  int index_of(const std::string& token) const;  // kUnk when absent
  const std::string& token_at(int index) const { return tokens_.at(index); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus, int min_count);

struct TokenizedText {
  std::vector<int> indices;

  int length() const { return static_cast<int>(indices.size()); }
};

TokenizedText index_tokens(const Vocabulary& vocab, const std::vector<std::string>& tokens);

// The learnable word look-up table behind the averaging encoder.
struct EmbeddingTable {
  Eigen::MatrixXd weights;  // V x d_text

  int vocab_size() const { return static_cast<int>(weights.rows()); }
  int dim() const { return static_cast<int>(weights.cols()); }
};

// Mean of the token embedding rows; empty text encodes to the zero vector.
Eigen::VectorXd encode_wavg(const EmbeddingTable& table, const TokenizedText& toks);

// Sparse row gradients keyed by vocabulary index. Ordered map so that every
// consumer iterates rows in the same order.
using RowGradMap = std::map<int, Eigen::VectorXd>;

// Chain rule through the mean: each occurrence of index i adds grad_x / L.
RowGradMap encode_wavg_backward(const Eigen::VectorXd& grad_x, const TokenizedText& toks);

// Same accumulation into a caller-owned map (used when many nodes share a table).
void accumulate_wavg_backward(const Eigen::VectorXd& grad_x, const TokenizedText& toks,
                              RowGradMap& into);

}  // namespace detgp
