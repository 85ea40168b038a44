use std::ffi::{CStr, CString};
use std::ptr;

use zfthrottle_ffi::*;

fn graph(g6: &str) -> *mut ZftGraph {
    let text = CString::new(g6).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { zft_graph_from_graph6(text.as_ptr(), &mut g) }, ZftStatus::Ok);
    g
}

fn last_error() -> String {
    let p = zft_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { zft_string_free(s) };
    owned
}

#[test]
fn round_trip_and_order() {
    let g = graph("Ch"); // P4
    unsafe {
        assert_eq!(zft_graph_order(g), 4);
        assert_eq!(zft_graph_edge_count(g), 3);
        let mut s = ptr::null_mut();
        assert_eq!(zft_graph_to_graph6(g, &mut s), ZftStatus::Ok);
        assert_eq!(take(s), "Ch");
        zft_graph_free(g);
        assert_eq!(zft_graph_order(ptr::null()), 0);
    }
}

#[test]
fn throttling_and_propagation() {
    let endpoints = [0usize, 1, 1, 2, 2, 3, 3, 4];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(zft_graph_from_edges(5, endpoints.as_ptr(), 4, &mut g), ZftStatus::Ok);
        let (mut pt, mut all) = (0usize, false);
        assert_eq!(zft_propagation_time(g, ZftRule::ZPlus, 1 << 2, &mut pt, &mut all), ZftStatus::Ok);
        assert!(all);
        assert_eq!(pt, 2);
        assert_eq!(zft_propagation_time(g, ZftRule::Z, 1 << 2, &mut pt, &mut all), ZftStatus::Ok);
        assert!(!all);

        let (mut th, mut initial, mut ptt) = (0usize, 0u32, 0usize);
        assert_eq!(zft_throttling_number(g, ZftRule::ZPlus, &mut th, &mut initial, &mut ptt), ZftStatus::Ok);
        assert_eq!(th, 3);
        assert_eq!(initial.count_ones() as usize + ptt, th);
        assert_eq!(zft_throttling_number(g, ZftRule::Z, &mut th, ptr::null_mut(), ptr::null_mut()), ZftStatus::Ok);
        assert_eq!(th, 4);

        let mut json = ptr::null_mut();
        assert_eq!(zft_throttling_certificate_json(g, ZftRule::ZPlus, &mut json), ZftStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["th"], 3);
        zft_graph_free(g);
    }
}

#[test]
fn classifiers_and_spectral() {
    unsafe {
        let k4 = graph("C~");
        let p4 = graph("Ch");
        let mut flag = false;
        assert_eq!(zft_classify_th_eq_n(k4, &mut flag), ZftStatus::Ok);
        assert!(flag);
        assert_eq!(zft_classify_th_eq_n(p4, &mut flag), ZftStatus::Ok);
        assert!(!flag);
        let mut class = ZftThPlusClass::Below;
        assert_eq!(zft_classify_thplus(k4, &mut class), ZftStatus::Ok);
        assert_eq!(class, ZftThPlusClass::EqualsN);
        assert_eq!(zft_contains_forbidden_member(p4, 0, &mut flag), ZftStatus::Ok);
        assert!(flag);
        let mut rho = 0.0;
        assert_eq!(zft_spectral_radius(k4, &mut rho), ZftStatus::Ok);
        assert!((rho - 3.0).abs() < 1e-9);
        let mut json = ptr::null_mut();
        assert_eq!(zft_characterization_certificate_json(k4, 1, ZftFlavor::Psd, &mut json), ZftStatus::Ok);
        assert_eq!(take(json), "null");
        assert_eq!(zft_characterization_certificate_json(k4, 4, ZftFlavor::Psd, &mut json), ZftStatus::Ok);
        assert!(take(json).starts_with('{'));
        zft_graph_free(k4);
        zft_graph_free(p4);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("C~~~").unwrap();
        assert_eq!(zft_graph_from_graph6(bad.as_ptr(), &mut g), ZftStatus::Parse);
        assert!(last_error().contains("parse"));
        assert!(g.is_null());

        assert_eq!(zft_graph_from_graph6(ptr::null(), &mut g), ZftStatus::NullPointer);
        let loops = [1usize, 1];
        assert_eq!(zft_graph_from_edges(3, loops.as_ptr(), 1, &mut g), ZftStatus::Domain);

        let two = graph("A_").cast_const(); // K2
        let mut out = false;
        let empty_pair = graph("A?");
        assert_eq!(zft_classify_th_eq_n(empty_pair, &mut out), ZftStatus::Domain);
        assert_eq!(zft_contains_forbidden_member(two, 3, &mut out), ZftStatus::Capacity);
        let (mut pt, mut all) = (0usize, false);
        assert_eq!(zft_propagation_time(two, ZftRule::Z, 1 << 5, &mut pt, &mut all), ZftStatus::Usage);
        assert_eq!(zft_spectral_radius(two, ptr::null_mut()), ZftStatus::NullPointer);

        assert_eq!(zft_spectral_radius(two, &mut 0.0), ZftStatus::Ok);
        assert!(zft_last_error_message().is_null());
        zft_graph_free(two.cast_mut());
        zft_graph_free(empty_pair);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/zfthrottle.h")).unwrap();
    for name in [
        "typedef struct ZftGraph ZftGraph",
        "zft_graph_from_graph6",
        "zft_graph_free",
        "zft_throttling_number",
        "zft_propagation_time",
        "zft_last_error_message",
        "zft_string_free",
        "ZFT_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
