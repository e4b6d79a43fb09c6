// SPDX-License-Identifier: Apache-2.0

//! Benchmark fixtures shared by the bench targets.

use vnent_core::Graph;
use vnent_core::generators::GeneratorConfig;

pub fn er(n: usize) -> Graph {
    GeneratorConfig::er(n, 2 * n, 42).generate().expect("valid ER config")
}

pub fn sf(n: usize) -> Graph {
    GeneratorConfig::sf(n, 2.5, 2, 42).generate().expect("valid SF config")
}

pub fn rgg(n: usize) -> Graph {
    GeneratorConfig::rgg(n, 3, 4.0, 42).generate().expect("valid RGG config")
}
