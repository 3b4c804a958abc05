#pragma once

#include "susylab/common.hpp"

#include <doctest.h>

#include <functional>

namespace testing {

inline susylab::ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const susylab::Error& e) {
    return e.kind();
  }
  FAIL("expected a susylab::Error");
  return susylab::ErrorKind::InvalidArgument;
}

}  // namespace testing

#define CHECK_ERROR_KIND(expr, expected) CHECK(testing::kind_of([&] { (void)(expr); }) == (expected))
