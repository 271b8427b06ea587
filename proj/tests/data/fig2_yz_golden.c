///[FeatureGroup_A][Feature_G]!

#include <stdio.h>

/// Segment Debloated.

/// Code Block Debloated.

int func_y (int i, int j){
return 0;
}
/// Code Block Debloated.

///[Feature_G]
int func_g (int i){
    int j = func_y(i, 3);
    if(j<0){
        /// Code Block Debloated.
    }
    else{ j = j + i; }
    return j;
}
