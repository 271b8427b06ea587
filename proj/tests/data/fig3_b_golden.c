// Switch Case Example
switch (variable) {
///[Feature_A]
case FEATURE_A_SPECIFIED:
/// Case Label Debloated.
length = 2;
break; }
// If / Else if / Else Example
///[Feature_A]
if (cond_A) { handle_A(input); }
else if (cond_B) {
    /// Code Block Debloated.
}
else { handle_generic(input); }
