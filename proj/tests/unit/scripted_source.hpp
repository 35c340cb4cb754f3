#pragma once

#include <functional>
#include <utility>

#include "headnav/engine.hpp"

namespace test_support {

/// Input source driven by a lambda of the observation.
class ScriptedSource final : public headnav::InputSource {
 public:
  using Fn = std::function<headnav::InputSample(const headnav::Observation&)>;
  explicit ScriptedSource(Fn fn) : fn_(std::move(fn)) {}
  headnav::InputSample next(const headnav::Observation& obs) override { return fn_(obs); }

 private:
  Fn fn_;
};

}  // namespace test_support
