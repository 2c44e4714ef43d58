// Copyright 2026 The lexaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexaug/nmt/network.hpp"

namespace lexaug::oracle {

using nmt::Batch;
using nmt::Matrix;
using nmt::Model;

// Central differences of forward_loss, one parameter entry at a time.
inline Model finite_difference(const Model& model, const Batch& batch, double h) {
  Model fd = Model::zeros(model.config);
  Model probe = model;
  std::vector<Matrix*> probe_tensors;
  std::vector<Matrix*> fd_tensors;
  probe.for_each_tensor([&](std::string_view, Matrix& t) { probe_tensors.push_back(&t); });
  fd.for_each_tensor([&](std::string_view, Matrix& t) { fd_tensors.push_back(&t); });
  for (std::size_t k = 0; k < probe_tensors.size(); ++k) {
    Matrix& t = *probe_tensors[k];
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double saved = t.data()[i];
      t.data()[i] = saved + h;
      const double up = nmt::forward_loss(probe, batch);
      t.data()[i] = saved - h;
      const double down = nmt::forward_loss(probe, batch);
      t.data()[i] = saved;
      fd_tensors[k]->data()[i] = (up - down) / (2.0 * h);
    }
  }
  return fd;
}

struct Mismatch {
  double worst = 0.0;
  std::string where;
};

// Relative error with a floor so entries that are zero both ways compare as equal.
inline Mismatch compare(const Model& analytic, const Model& numeric) {
  std::vector<std::pair<std::string, const Matrix*>> a;
  std::vector<const Matrix*> n;
  analytic.for_each_tensor([&](std::string_view name, const Matrix& t) { a.emplace_back(std::string(name), &t); });
  numeric.for_each_tensor([&](std::string_view, const Matrix& t) { n.push_back(&t); });
  Mismatch m;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (Eigen::Index i = 0; i < a[k].second->size(); ++i) {
      const double x = a[k].second->data()[i];
      const double y = n[k]->data()[i];
      const double rel = std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-6});
      if (rel > m.worst) {
        m.worst = rel;
        m.where = a[k].first + "[" + std::to_string(i) + "] analytic=" + std::to_string(x) +
                  " numeric=" + std::to_string(y);
      }
    }
  }
  return m;
}

}  // namespace lexaug::oracle
