#pragma once

#include <doctest.h>

#include "sudler/error.hpp"

// Checks that `expr` throws sudler::Error carrying `expected`.
#define CHECK_ERROR_CODE(expr, expected)                       \
  do {                                                         \
    bool thrown_ = false;                                      \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const sudler::Error& e_) {                        \
      thrown_ = true;                                          \
      CHECK_MESSAGE(e_.code() == (expected), e_.what());       \
    }                                                          \
    CHECK_MESSAGE(thrown_, "expected sudler::Error: " #expr);  \
  } while (0)
