// SPDX-License-Identifier: Apache-2.0
//
// tddmimo - link-level simulator for reciprocity-calibrated TDD massive MIMO
// Copyright (C) 2026 The tddmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TDDMIMO_TEST_SUPPORT_HPP
#define TDDMIMO_TEST_SUPPORT_HPP

#include <catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <sstream>

namespace test
{

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr double deg = pi / 180.0;
inline const cplx j{0.0, 1.0};

inline cplx expj(double phase)
{
    return {std::cos(phase), std::sin(phase)};
}

// |a - b| <= tol, printed as complex numbers on failure.
class ComplexNear : public Catch::Matchers::MatcherBase<cplx>
{
public:
    ComplexNear(cplx target, double tol) : target_(target), tol_(tol) {}
    bool match(const cplx &v) const override { return std::abs(v - target_) <= tol_; }
    std::string describe() const override
    {
        std::ostringstream os;
        os.precision(17);
        os << "is within " << tol_ << " of " << target_;
        return os.str();
    }

private:
    cplx target_;
    double tol_;
};

inline ComplexNear near(cplx target, double tol)
{
    return {target, tol};
}

} // namespace test

#endif
