#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace contcalc {

template <class E>
struct Unexpected {
  E error;
};

template <class E>
Unexpected<std::decay_t<E>> unexpected(E&& error) {
  return {std::forward<E>(error)};
}

class BadExpectedAccess : public std::logic_error {
 public:
  BadExpectedAccess() : std::logic_error("value() called on an Expected holding an error") {}
};

/// Either a value or an error, in the spirit of C++23 std::expected.
template <class T, class E>
class Expected {
 public:
  Expected(T value) : data_(std::in_place_index<0>, std::move(value)) {}
  Expected(Unexpected<E> err) : data_(std::in_place_index<1>, std::move(err.error)) {}

  bool has_value() const noexcept { return data_.index() == 0; }
  explicit operator bool() const noexcept { return has_value(); }

  const T& value() const& {
    if (!has_value()) throw BadExpectedAccess();
    return std::get<0>(data_);
  }
  T& value() & {
    if (!has_value()) throw BadExpectedAccess();
    return std::get<0>(data_);
  }
  T&& value() && {
    if (!has_value()) throw BadExpectedAccess();
    return std::get<0>(std::move(data_));
  }

  const E& error() const& { return std::get<1>(data_); }
  E& error() & { return std::get<1>(data_); }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

 private:
  std::variant<T, E> data_;
};

}  // namespace contcalc
