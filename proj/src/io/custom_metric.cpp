// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/io/custom_metric.hpp"

#include <dlfcn.h>

#include <string>
#include <vector>

namespace lbstats::io {

namespace {

using LabelFn = double (*)(const char* const*, const char* const*, std::size_t);
using ValueFn = double (*)(const double*, const double*, std::size_t);
using NameFn = const char* (*)();

struct Library {
  void* handle = nullptr;
  ~Library() {
    if (handle) dlclose(handle);
  }
};

}  // namespace

std::shared_ptr<const CustomMetric> load_custom_metric(const std::filesystem::path& path) {
  auto library = std::make_shared<Library>();
  library->handle = dlopen(path.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (!library->handle) {
    const char* reason = dlerror();
    throw ConfigError("cannot load custom metric '" + path.string() +
                      "': " + (reason ? reason : "unknown error"));
  }
  const auto labels = reinterpret_cast<LabelFn>(dlsym(library->handle, "lbstats_score_labels"));
  const auto values = reinterpret_cast<ValueFn>(dlsym(library->handle, "lbstats_score_values"));
  const auto name = reinterpret_cast<NameFn>(dlsym(library->handle, "lbstats_metric_name"));
  if (!labels && !values) {
    throw ConfigError("custom metric '" + path.string() +
                      "' exports neither lbstats_score_labels nor lbstats_score_values");
  }

  auto metric = std::make_shared<CustomMetric>();
  metric->name = name ? std::string(name()) : path.stem().string();
  if (labels) {
    metric->score_labels = [library, labels](std::span<const std::string_view> gold,
                                             std::span<const std::string_view> pred) {
      std::vector<std::string> owned;
      owned.reserve(gold.size() + pred.size());
      for (auto v : gold) owned.emplace_back(v);
      for (auto v : pred) owned.emplace_back(v);
      std::vector<const char*> pointers;
      pointers.reserve(owned.size());
      for (const auto& s : owned) pointers.push_back(s.c_str());
      return labels(pointers.data(), pointers.data() + gold.size(), gold.size());
    };
  }
  if (values) {
    metric->score_values = [library, values](std::span<const double> gold,
                                             std::span<const double> pred) {
      return values(gold.data(), pred.data(), gold.size());
    };
  }
  return metric;
}

}  // namespace lbstats::io
