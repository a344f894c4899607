pub mod budget;
pub mod coxeter;
pub mod error;
pub mod gmpn;
pub mod group;
mod json;
pub mod orders;
pub mod poset;
pub mod quadratic;
pub mod flow;
pub mod reproduce;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/orders.md")]
    mod orders {}
    #[doc = include_str!("../../../book/src/flows.md")]
    mod flows {}
    #[doc = include_str!("../../../book/src/sperner.md")]
    mod sperner {}
    #[doc = include_str!("../../../book/src/claws.md")]
    mod claws {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
