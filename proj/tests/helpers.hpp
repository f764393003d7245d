#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

#include "slotprobe/activation_store.hpp"
#include "slotprobe/random.hpp"

namespace slotprobe::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("slotprobe-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Gaussian activations and uniform labels; no planted structure.
inline ActivationDataset random_dataset(std::size_t prompts, std::size_t entities, std::size_t tokens, std::size_t dim,
                                        std::size_t traits, std::uint64_t seed) {
  DatasetMeta m;
  m.model_id = "random";
  m.hidden_dim = dim;
  m.num_prompts = prompts;
  m.entities_per_prompt = entities;
  m.tokens_per_entity = tokens;
  for (std::size_t x = 0; x < traits; ++x) m.trait_vocab.push_back("t" + std::to_string(x));
  auto ds = ActivationDataset::allocate(m);
  Rng rng(seed);
  for (auto& v : ds.activations) v = static_cast<float>(rng.normal());
  for (auto& y : ds.labels) y = static_cast<std::int32_t>(rng.below(traits));
  for (std::size_t p = 0; p < prompts; ++p) ds.prompt_ids[p] = "p" + std::to_string(p);
  return ds;
}

}  // namespace slotprobe::testing
