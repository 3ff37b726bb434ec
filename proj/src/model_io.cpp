// Copyright 2026 The Needminer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text container for trained models; the layout is documented in
// docs/model-format.md.

#include <charconv>
#include <string>

#include "needminer/classify.hpp"
#include "needminer/error.hpp"
#include "needminer/io.hpp"
#include "needminer/text.hpp"

namespace needminer::classify {

namespace {

constexpr std::string_view kMagic = "needminer-model";

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::kCorruptModel, what); }

template <typename T>
T parse_number(std::string_view token) {
  T value{};
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    corrupt("bad number '" + std::string(token) + "'");
  }
  return value;
}

class LineReader {
 public:
  explicit LineReader(std::string_view content) : content_(content) {}

  std::string_view line() {
    if (pos_ >= content_.size()) corrupt("unexpected end of file");
    const auto end = content_.find('\n', pos_);
    if (end == std::string_view::npos) corrupt("unterminated last line");
    auto out = content_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++number_;
    return out;
  }

  std::vector<std::string_view> fields(std::size_t expected) {
    auto f = text::split_whitespace(line());
    if (f.size() != expected) {
      corrupt("line " + std::to_string(number_) + ": expected " + std::to_string(expected) +
              " fields");
    }
    return f;
  }

  // "<keyword> <value>" with a fixed keyword.
  std::string_view keyed(std::string_view keyword) {
    const auto f = fields(2);
    if (f[0] != keyword) corrupt("line " + std::to_string(number_) + ": expected " + std::string(keyword));
    return f[1];
  }

  void expect(std::string_view exact) {
    if (line() != exact) corrupt("line " + std::to_string(number_) + ": expected " + std::string(exact));
  }

  bool at_end() const { return pos_ >= content_.size(); }

 private:
  std::string_view content_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

void write_tree(std::string& out, const TreeParams& tree) {
  out += "tree " + std::to_string(tree.nodes.size()) + "\n";
  for (const auto& n : tree.nodes) {
    out += std::to_string(n.feature) + " " + std::to_string(n.absent) + " " +
           std::to_string(n.present) + " " + std::to_string(n.need) + " " +
           std::to_string(n.no_need) + "\n";
  }
}

TreeParams read_tree(LineReader& in, std::size_t dimension) {
  const auto count = parse_number<std::size_t>(in.keyed("tree"));
  if (count == 0) corrupt("empty tree");
  TreeParams tree;
  tree.nodes.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto f = in.fields(5);
    auto& n = tree.nodes[i];
    n.feature = parse_number<std::int32_t>(f[0]);
    n.absent = parse_number<std::uint32_t>(f[1]);
    n.present = parse_number<std::uint32_t>(f[2]);
    n.need = parse_number<std::uint32_t>(f[3]);
    n.no_need = parse_number<std::uint32_t>(f[4]);
    if (n.leaf()) {
      if (n.need + n.no_need == 0) corrupt("leaf without training instances");
      continue;
    }
    // Children always follow their parent, which rules out cycles.
    if (static_cast<std::size_t>(n.feature) >= dimension || n.absent <= i || n.present <= i ||
        n.absent >= count || n.present >= count) {
      corrupt("inconsistent tree node " + std::to_string(i));
    }
  }
  return tree;
}

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  std::string out;
  out += std::string(kMagic) + " " + std::to_string(kModelFormatVersion) + "\n";
  out += "algorithm " + std::string(to_string(model.spec.algorithm)) + "\n";
  out += "seed " + std::to_string(model.spec.seed) + "\n";
  out += "hyperparameters " + std::to_string(model.spec.hyperparameters.size()) + "\n";
  for (const auto& [key, value] : model.spec.hyperparameters) {
    out += key + " " + format_double(value) + "\n";
  }
  out += "vocabulary " + std::to_string(model.vocabulary.size()) + "\n";
  for (const auto& term : model.vocabulary.terms()) out += term + "\n";
  out += "parameters\n";
  if (const auto* nb = std::get_if<NaiveBayesParams>(&model.parameters)) {
    out += "log_prior " + format_double(nb->log_prior_need) + " " +
           format_double(nb->log_prior_no_need) + "\n";
    out += "presence " + std::to_string(nb->presence_need.size()) + "\n";
    for (std::size_t j = 0; j < nb->presence_need.size(); ++j) {
      out += format_double(nb->presence_need[j]) + " " + format_double(nb->presence_no_need[j]) +
             "\n";
    }
  } else if (const auto* svm = std::get_if<PegasosParams>(&model.parameters)) {
    out += "bias " + format_double(svm->bias) + "\n";
    out += "weights " + std::to_string(svm->weights.size()) + "\n";
    for (double w : svm->weights) out += format_double(w) + "\n";
  } else if (const auto* tree = std::get_if<TreeParams>(&model.parameters)) {
    write_tree(out, *tree);
  } else if (const auto* forest = std::get_if<ForestParams>(&model.parameters)) {
    out += "trees " + std::to_string(forest->trees.size()) + "\n";
    for (const auto& t : forest->trees) write_tree(out, t);
  }
  out += "end\n";
  return out;
}

TrainedModel deserialize_model(std::string_view content) {
  LineReader in(content);
  {
    const auto header = text::split_whitespace(in.line());
    if (header.size() != 2 || header[0] != kMagic) corrupt("not a needminer model file");
    const auto version = parse_number<int>(header[1]);
    if (version != kModelFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "model format " + std::string(header[1]) + ", this build reads " +
                      std::to_string(kModelFormatVersion));
    }
  }

  TrainedModel model;
  try {
    model.spec.algorithm = parse_algorithm(in.keyed("algorithm"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorruptModel) throw;
    corrupt(e.what());
  }
  model.spec.seed = parse_number<std::uint64_t>(in.keyed("seed"));
  const auto n_hyper = parse_number<std::size_t>(in.keyed("hyperparameters"));
  for (std::size_t i = 0; i < n_hyper; ++i) {
    const auto f = in.fields(2);
    model.spec.hyperparameters[std::string(f[0])] = parse_number<double>(f[1]);
  }
  try {
    model.spec.hyperparameters = resolve(model.spec);
  } catch (const Error& e) {
    corrupt(e.what());
  }

  const auto n_terms = parse_number<std::size_t>(in.keyed("vocabulary"));
  std::vector<std::string> terms;
  terms.reserve(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) terms.emplace_back(in.line());
  try {
    model.vocabulary = Vocabulary(std::move(terms));
  } catch (const Error& e) {
    corrupt(e.what());
  }
  const auto d = model.vocabulary.size();

  in.expect("parameters");
  switch (model.spec.algorithm) {
    case Algorithm::kNaiveBayes: {
      NaiveBayesParams nb;
      const auto priors = in.fields(3);
      if (priors[0] != "log_prior") corrupt("expected log_prior");
      nb.log_prior_need = parse_number<double>(priors[1]);
      nb.log_prior_no_need = parse_number<double>(priors[2]);
      if (parse_number<std::size_t>(in.keyed("presence")) != d) corrupt("presence size");
      for (std::size_t j = 0; j < d; ++j) {
        const auto f = in.fields(2);
        const double pn = parse_number<double>(f[0]);
        const double pnn = parse_number<double>(f[1]);
        if (!(pn > 0.0 && pn < 1.0 && pnn > 0.0 && pnn < 1.0)) corrupt("probability out of range");
        nb.presence_need.push_back(pn);
        nb.presence_no_need.push_back(pnn);
      }
      model.parameters = std::move(nb);
      break;
    }
    case Algorithm::kSpegasos: {
      PegasosParams svm;
      svm.bias = parse_number<double>(in.keyed("bias"));
      if (parse_number<std::size_t>(in.keyed("weights")) != d) corrupt("weights size");
      for (std::size_t j = 0; j < d; ++j) svm.weights.push_back(parse_number<double>(in.line()));
      model.parameters = std::move(svm);
      break;
    }
    case Algorithm::kRandomTree:
      model.parameters = read_tree(in, d);
      break;
    case Algorithm::kRandomForest: {
      ForestParams forest;
      const auto n = parse_number<std::size_t>(in.keyed("trees"));
      if (n == 0) corrupt("forest without trees");
      for (std::size_t t = 0; t < n; ++t) forest.trees.push_back(read_tree(in, d));
      model.parameters = std::move(forest);
      break;
    }
  }
  in.expect("end");
  if (!in.at_end()) corrupt("trailing content after end");
  return model;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  io::write_text(path, serialize_model(model));
}

TrainedModel load_model(const std::filesystem::path& path) {
  return deserialize_model(io::read_text(path));
}

}  // namespace needminer::classify
