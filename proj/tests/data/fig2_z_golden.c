///[FeatureGroup_A][Feature_G]!

#include <stdio.h>

///[Feature_Y]~
int a = 0;
int b = 1;
///~

/// Code Block Debloated.

int func_y (int i, int j){
    ///[Feature_Y]~
    ///^
    ///return 0;
    ///^
    int ret = i + a;
    int temp = b - j;
    return ret * temp;
    ///~
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
