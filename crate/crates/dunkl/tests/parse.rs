//! The scalar formats accepted on the command line.

use dunkl::parse::{complex, complex_list, format_complex, index, rational, real};
use dunkl_core::poly::q;
use dunkl_core::C64;

#[test]
fn rationals_and_reals() {
    assert_eq!(rational("3/4").unwrap(), q(3, 4));
    assert_eq!(rational("-2").unwrap(), q(-2, 1));
    assert!(rational("1/0").is_err());
    assert!(rational("x").is_err());
    assert_eq!(real("7/2").unwrap(), 3.5);
    assert_eq!(real("1e-3").unwrap(), 1e-3);
}

#[test]
fn complex_forms() {
    assert_eq!(complex("2").unwrap(), C64::new(2.0, 0.0));
    assert_eq!(complex("-i").unwrap(), C64::new(0.0, -1.0));
    assert_eq!(complex("i").unwrap(), C64::new(0.0, 1.0));
    assert_eq!(complex("0.5-1.5i").unwrap(), C64::new(0.5, -1.5));
    assert_eq!(complex("1e-3+2i").unwrap(), C64::new(1e-3, 2.0));
    assert_eq!(complex("-1e+2-3e-1i").unwrap(), C64::new(-100.0, -0.3));
    assert_eq!(complex(" 1 + 2i ").unwrap(), C64::new(1.0, 2.0));
    assert_eq!(complex("1/2+3/4i").unwrap(), C64::new(0.5, 0.75));
    assert!(complex("").is_err());
    assert!(complex("1+xi").is_err());
}

#[test]
fn lists_and_indices() {
    assert_eq!(complex_list("1,2+i").unwrap(), vec![C64::new(1.0, 0.0), C64::new(2.0, 1.0)]);
    assert_eq!(index("2, 1,0").unwrap(), vec![2, 1, 0]);
    assert!(index("2,-1").is_err());
}

#[test]
fn formatting_round_trips() {
    for z in [C64::new(0.5, -1.5), C64::new(-3.0, 0.0), C64::new(1e-3, 2.5e7)] {
        assert_eq!(complex(&format_complex(z)).unwrap(), z);
    }
}
