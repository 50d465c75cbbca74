#pragma once

#include <doctest.h>

#include <functional>
#include <initializer_list>

#include "hassett/error.hpp"
#include "hassett/rational.hpp"

inline hassett::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const hassett::Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return hassett::ErrorKind::Parse;
}

inline hassett::TailSet S(std::initializer_list<int> labels) { return hassett::make_set(labels); }
