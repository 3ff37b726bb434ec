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

#include <string>
#include <vector>

#include "needminer/classify.hpp"
#include "needminer/io.hpp"
#include "needminer/rng.hpp"
#include "support.hpp"

using namespace needminer;
using classify::Algorithm;
using sampling::Instance;
using sampling::Label;
using textproc::FeatureVector;

namespace {

std::vector<Instance> data(Rng& rng, std::size_t n, std::size_t d) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint8_t> bits(d);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(3) == 0);
    const auto label = bits[0] && rng.below(4) ? Label::kNeed : Label::kNoNeed;
    out.push_back({"x" + std::to_string(i), FeatureVector::from_bits(bits),
                   i < 2 ? (i == 0 ? Label::kNeed : Label::kNoNeed) : label, false});
  }
  return out;
}

textproc::Vocabulary vocabulary(std::size_t d) {
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < d; ++i) terms.push_back("wort" + std::string(1, static_cast<char>('a' + i % 26)) + std::to_string(i));
  std::sort(terms.begin(), terms.end());
  return textproc::Vocabulary(terms);
}

classify::TrainedModel trained(Algorithm a, std::uint64_t seed = 4) {
  Rng rng(seed);
  return classify::fit({a, a == Algorithm::kRandomForest ? classify::Hyperparameters{{"trees", 7.0}}
                                                         : classify::Hyperparameters{},
                        seed},
                       data(rng, 80, 24), vocabulary(24));
}

}  // namespace

TEST_CASE("model round-trip preserves every score bit for bit") {
  test::TempDir dir;
  Rng rng(8);
  for (auto a : classify::all_algorithms()) {
    const auto model = trained(a);
    classify::save_model(model, dir / "m.model");
    const auto loaded = classify::load_model(dir / "m.model");
    CHECK(loaded.spec == model.spec);
    CHECK(loaded.vocabulary == model.vocabulary);
    CHECK(loaded.parameters == model.parameters);
    for (int i = 0; i < 100; ++i) {
      std::vector<std::uint8_t> bits(24);
      for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
      const auto x = FeatureVector::from_bits(bits);
      CHECK(classify::score(loaded, x) == classify::score(model, x));
    }
    CHECK(classify::serialize_model(loaded) == classify::serialize_model(model));
  }
}

TEST_CASE("model files start with a version header and end with a marker") {
  const auto text = classify::serialize_model(trained(Algorithm::kNaiveBayes));
  CHECK(text.rfind("needminer-model 1\n", 0) == 0);
  CHECK(text.size() >= 4);
  CHECK(text.substr(text.size() - 4) == "end\n");
}

TEST_CASE("truncated model files are corrupt") {
  for (auto a : classify::all_algorithms()) {
    const auto text = classify::serialize_model(trained(a));
    for (std::size_t cut = 0; cut + 1 < text.size(); cut += 1 + text.size() / 40) {
      CHECK_ERROR(classify::deserialize_model(text.substr(0, cut)), ErrorCode::kCorruptModel);
    }
    CHECK_ERROR(classify::deserialize_model(text + "extra\n"), ErrorCode::kCorruptModel);
  }
}

TEST_CASE("other versions are rejected") {
  auto text = classify::serialize_model(trained(Algorithm::kSpegasos));
  text.replace(0, std::string("needminer-model 1").size(), "needminer-model 2");
  CHECK_ERROR(classify::deserialize_model(text), ErrorCode::kVersionMismatch);
}

TEST_CASE("damaged fields are corrupt") {
  auto text = classify::serialize_model(trained(Algorithm::kSpegasos));
  const auto pos = text.find("bias ");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 5, "bias x");
  CHECK_ERROR(classify::deserialize_model(text), ErrorCode::kCorruptModel);
  CHECK_ERROR(classify::deserialize_model("hello\n"), ErrorCode::kCorruptModel);
  CHECK_ERROR(classify::deserialize_model(""), ErrorCode::kCorruptModel);

  test::TempDir dir;
  CHECK_ERROR(classify::load_model(dir / "absent.model"), ErrorCode::kIoError);
}

TEST_CASE("the documented example is what fit writes") {
  const auto doc = io::read_text(std::filesystem::path(NEEDMINER_DOCS_DIR) / "model-format.md");
  const auto section = doc.find("## Example");
  REQUIRE(section != std::string::npos);
  const auto open = doc.find("```\n", section) + 4;
  const auto close = doc.find("```", open);
  const auto example = doc.substr(open, close - open);

  auto inst = [](const char* id, std::vector<std::uint8_t> bits, sampling::Label l) {
    return sampling::Instance{id, textproc::FeatureVector::from_bits(bits), l, false};
  };
  const std::vector<sampling::Instance> data = {
      inst("1", {1, 0}, sampling::Label::kNeed), inst("2", {1, 1}, sampling::Label::kNeed),
      inst("3", {0, 0}, sampling::Label::kNoNeed), inst("4", {0, 1}, sampling::Label::kNoNeed)};
  const auto model = classify::fit({classify::Algorithm::kNaiveBayes, {}, 0}, data,
                                   textproc::Vocabulary({"a", "b"}));
  CHECK(classify::serialize_model(model) == example);
  CHECK(classify::serialize_model(classify::deserialize_model(example)) == example);
}
