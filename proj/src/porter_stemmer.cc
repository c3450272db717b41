/*
 * Copyright 2026 The EMCO Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "emco/porter_stemmer.h"

namespace emco {
namespace {

// Working state of one stemming call. `end` is one past the last character
// of the current stem candidate; `j` marks the stem boundary set by ends().
class PorterStemmer {
 public:
  explicit PorterStemmer(std::string_view word) : b_(word), end_(word.size()) {}

  std::string run() {
    if (end_ <= 2) return b_;
    step1ab();
    if (end_ > 1) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    b_.resize(end_);
    return b_;
  }

 private:
  bool cons(size_t i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, j_).
  int measure() const {
    int n = 0;
    size_t i = 0;
    while (true) {
      if (i >= j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i >= j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i >= j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (size_t i = 0; i < j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_cons(size_t last) const {
    if (last < 1) return false;
    if (b_[last] != b_[last - 1]) return false;
    return cons(last);
  }

  // cvc at positions i-2, i-1, i where the final c is not w, x or y.
  bool cvc(size_t i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view suffix) {
    if (suffix.size() > end_) return false;
    if (std::string_view(b_).substr(end_ - suffix.size(), suffix.size()) !=
        suffix) {
      return false;
    }
    j_ = end_ - suffix.size();
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(j_, end_ - j_, s);
    end_ = j_ + s.size();
    b_.resize(end_);
  }

  void replace_if_measured(std::string_view s) {
    if (measure() > 0) set_to(s);
  }

  void step1ab() {
    if (b_[end_ - 1] == 's') {
      if (ends("sses")) {
        end_ -= 2;
      } else if (ends("ies")) {
        j_ = end_ - 3;
        set_to("i");
      } else if (end_ >= 2 && b_[end_ - 2] != 's') {
        --end_;
      }
      b_.resize(end_);
    }
    if (ends("eed")) {
      if (measure() > 0) {
        --end_;
        b_.resize(end_);
      }
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      end_ = j_;
      b_.resize(end_);
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_cons(end_ - 1)) {
        const char ch = b_[end_ - 1];
        if (ch != 'l' && ch != 's' && ch != 'z') {
          --end_;
          b_.resize(end_);
        }
      } else {
        j_ = end_;
        if (measure() == 1 && cvc(end_ - 1)) {
          j_ = end_;
          set_to("e");
        }
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[end_ - 1] = 'i';
  }

  void step2() {
    if (end_ < 2) return;
    switch (b_[end_ - 2]) {
      case 'a':
        if (ends("ational")) { replace_if_measured("ate"); break; }
        if (ends("tional")) { replace_if_measured("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { replace_if_measured("ence"); break; }
        if (ends("anci")) { replace_if_measured("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { replace_if_measured("ize"); break; }
        break;
      case 'l':
        if (ends("bli")) { replace_if_measured("ble"); break; }
        if (ends("alli")) { replace_if_measured("al"); break; }
        if (ends("entli")) { replace_if_measured("ent"); break; }
        if (ends("eli")) { replace_if_measured("e"); break; }
        if (ends("ousli")) { replace_if_measured("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { replace_if_measured("ize"); break; }
        if (ends("ation")) { replace_if_measured("ate"); break; }
        if (ends("ator")) { replace_if_measured("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { replace_if_measured("al"); break; }
        if (ends("iveness")) { replace_if_measured("ive"); break; }
        if (ends("fulness")) { replace_if_measured("ful"); break; }
        if (ends("ousness")) { replace_if_measured("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { replace_if_measured("al"); break; }
        if (ends("iviti")) { replace_if_measured("ive"); break; }
        if (ends("biliti")) { replace_if_measured("ble"); break; }
        break;
      case 'g':
        if (ends("logi")) { replace_if_measured("log"); break; }
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (b_[end_ - 1]) {
      case 'e':
        if (ends("icate")) { replace_if_measured("ic"); break; }
        if (ends("ative")) { replace_if_measured(""); break; }
        if (ends("alize")) { replace_if_measured("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { replace_if_measured("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { replace_if_measured("ic"); break; }
        if (ends("ful")) { replace_if_measured(""); break; }
        break;
      case 's':
        if (ends("ness")) { replace_if_measured(""); break; }
        break;
      default:
        break;
    }
  }

  void step4() {
    if (end_ < 2) return;
    bool matched = false;
    switch (b_[end_ - 2]) {
      case 'a': matched = ends("al"); break;
      case 'c': matched = ends("ance") || ends("ence"); break;
      case 'e': matched = ends("er"); break;
      case 'i': matched = ends("ic"); break;
      case 'l': matched = ends("able") || ends("ible"); break;
      case 'n':
        matched = ends("ant") || ends("ement") || ends("ment") || ends("ent");
        break;
      case 'o':
        if (ends("ion")) {
          matched = j_ > 0 && (b_[j_ - 1] == 's' || b_[j_ - 1] == 't');
        } else {
          matched = ends("ou");
        }
        break;
      case 's': matched = ends("ism"); break;
      case 't': matched = ends("ate") || ends("iti"); break;
      case 'u': matched = ends("ous"); break;
      case 'v': matched = ends("ive"); break;
      case 'z': matched = ends("ize"); break;
      default: break;
    }
    if (matched && measure() > 1) {
      end_ = j_;
      b_.resize(end_);
    }
  }

  void step5() {
    j_ = end_;
    if (b_[end_ - 1] == 'e') {
      const int m = measure();
      if (m > 1 || (m == 1 && !cvc(end_ - 2))) {
        --end_;
        b_.resize(end_);
      }
    }
    if (end_ >= 2 && b_[end_ - 1] == 'l' && double_cons(end_ - 1)) {
      j_ = end_;
      if (measure() > 1) {
        --end_;
        b_.resize(end_);
      }
    }
  }

  std::string b_;
  size_t end_;
  size_t j_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  return PorterStemmer(word).run();
}

}  // namespace emco
