///[FeatureGroup_A][Feature_G]!

#include <stdio.h>

///[Feature_Y]~
int a = 0;
int b = 1;
///~

///[Feature_Z]
char msg[10];

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
///[Feature_Z]
void func_z(int k){ printf(msg); }

///[Feature_G]
int func_g (int i){
    int j = func_y(i, 3);
    ///[Feature_Z]
    if(j<0){ func_z(j); }
    else{ j = j + i; }
    return j;
}
