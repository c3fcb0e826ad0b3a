//! Tori and Klein bottles with their two-vertex spines.

mod gadget;
mod gluing;
mod klein;
mod selfglue;

pub use gadget::{gadget_classes, Gadget, GadgetMap, MarkedSurface, PSLOT};
pub use gluing::{
    assemble_polyhedra, boundary_isomorphisms, boundary_of, compose, enumerate_gluings, gadget_boundary, gadget_mark,
    gluings_between, Boundary, GluingError, GluingMap,
};
pub use klein::{
    classify_loops_klein, matching_solutions, mcg_klein, nontrivial_loops_klein, write_klein_table, H1Class, LoopClass,
    LoopData, MappingClass, McgTable, NormalCurve,
};
pub use selfglue::{enumerate_double_point_maps, DoublePointMap};
